#include "dgper/fda.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace dgper {

namespace {

Scalar trace(const Mat& m) {
    Scalar t = Scalar::zero(m.field());
    for (int i = 0; i < m.rows(); ++i) t = t + m.at(i, i);
    return t;
}

std::vector<Scalar> random_coords(const Field& k, int n, std::mt19937_64& rng) {
    std::vector<Scalar> v;
    v.reserve(static_cast<std::size_t>(n));
    if (k.is_prime_field()) {
        std::uniform_int_distribution<std::uint64_t> dist(0, k.characteristic() - 1);
        for (int i = 0; i < n; ++i) v.push_back(Scalar::from_int(k, static_cast<long long>(dist(rng))));
    } else {
        std::uniform_int_distribution<int> dist(-3, 3);
        for (int i = 0; i < n; ++i) v.push_back(Scalar::from_int(k, dist(rng)));
    }
    return v;
}

} // namespace

FiniteDimAlgebra FiniteDimAlgebra::validate(Field field, std::vector<std::string> labels,
                                            std::vector<std::vector<FdaElement>> mult, FdaElement unit) {
    FiniteDimAlgebra e;
    e.field_ = field;
    e.dim_ = static_cast<int>(labels.size());
    e.labels_ = std::move(labels);
    e.mult_ = std::move(mult);
    e.unit_ = std::move(unit);
    std::size_t n = static_cast<std::size_t>(e.dim_);
    if (e.mult_.size() != n || e.unit_.size() != n)
        throw Error(ErrorCode::ValidationError, "structure constant table has the wrong shape");
    for (const auto& row : e.mult_) {
        if (row.size() != n) throw Error(ErrorCode::ValidationError, "structure constant table has the wrong shape");
        for (const auto& v : row)
            if (v.size() != n) throw Error(ErrorCode::ValidationError, "structure constant table has the wrong shape");
    }
    for (int i = 0; i < e.dim_; ++i) {
        FdaElement bi = e.basis_vec(i);
        if (e.multiply(e.unit_, bi) != bi || e.multiply(bi, e.unit_) != bi)
            throw Error(ErrorCode::ValidationError, "unit law fails in structure constants");
        for (int j = 0; j < e.dim_; ++j)
            for (int l = 0; l < e.dim_; ++l) {
                FdaElement lhs = e.multiply(e.multiply(bi, e.basis_vec(j)), e.basis_vec(l));
                FdaElement rhs = e.multiply(bi, e.multiply(e.basis_vec(j), e.basis_vec(l)));
                if (lhs != rhs)
                    throw Error(ErrorCode::AssocViolation, "associativity fails in structure constants");
            }
    }
    return e;
}

FdaElement FiniteDimAlgebra::basis_vec(int i) const {
    FdaElement v = zero();
    v[static_cast<std::size_t>(i)] = Scalar::one(field_);
    return v;
}

FdaElement FiniteDimAlgebra::multiply(const FdaElement& a, const FdaElement& b) const {
    FdaElement out = zero();
    for (int i = 0; i < dim_; ++i) {
        if (a[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; j < dim_; ++j) {
            if (b[static_cast<std::size_t>(j)].is_zero()) continue;
            Scalar f = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
            const FdaElement& prod = mult_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int t = 0; t < dim_; ++t)
                if (!prod[static_cast<std::size_t>(t)].is_zero())
                    out[static_cast<std::size_t>(t)] = out[static_cast<std::size_t>(t)] + prod[static_cast<std::size_t>(t)] * f;
        }
    }
    return out;
}

FdaElement FiniteDimAlgebra::add(const FdaElement& a, const FdaElement& b) const {
    FdaElement out = a;
    for (int i = 0; i < dim_; ++i) out[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
    return out;
}

FdaElement FiniteDimAlgebra::sub(const FdaElement& a, const FdaElement& b) const {
    FdaElement out = a;
    for (int i = 0; i < dim_; ++i) out[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)];
    return out;
}

FdaElement FiniteDimAlgebra::scale(const FdaElement& a, const Scalar& c) const {
    FdaElement out = a;
    for (Scalar& s : out) s = s * c;
    return out;
}

bool FiniteDimAlgebra::is_zero_elem(const FdaElement& a) const {
    for (const Scalar& s : a)
        if (!s.is_zero()) return false;
    return true;
}

Mat FiniteDimAlgebra::left_mult_matrix(const FdaElement& a) const {
    Mat out(field_, dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
        FdaElement col = multiply(a, basis_vec(j));
        for (int i = 0; i < dim_; ++i) out.at(i, j) = col[static_cast<std::size_t>(i)];
    }
    return out;
}

Poly FiniteDimAlgebra::minimal_polynomial(const FdaElement& a) const {
    SpanBuilder span(field_, dim_);
    std::vector<FdaElement> powers;
    FdaElement cur = unit_;
    for (;;) {
        if (!span.insert(cur)) break;
        powers.push_back(cur);
        cur = multiply(cur, a);
    }
    int k = static_cast<int>(powers.size());
    Mat sys(field_, dim_, k);
    for (int c = 0; c < k; ++c)
        for (int r = 0; r < dim_; ++r) sys.at(r, c) = powers[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    Mat rhs(field_, dim_, 1);
    for (int r = 0; r < dim_; ++r) rhs.at(r, 0) = cur[static_cast<std::size_t>(r)];
    std::optional<Mat> x = solve(sys, rhs);
    if (!x) throw std::logic_error("minimal_polynomial: dependent power not in span");
    Poly mu(static_cast<std::size_t>(k) + 1, Scalar::zero(field_));
    for (int c = 0; c < k; ++c) mu[static_cast<std::size_t>(c)] = -x->at(c, 0);
    mu[static_cast<std::size_t>(k)] = Scalar::one(field_);
    return mu;
}

FdaElement FiniteDimAlgebra::eval_poly(const Poly& p, const FdaElement& a) const {
    FdaElement out = zero();
    FdaElement pow = unit_;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p[i].is_zero()) out = add(out, scale(pow, p[i]));
        if (i + 1 < p.size()) pow = multiply(pow, a);
    }
    return out;
}

ChainMap EndAlgebra::realize(const FdaElement& a) const {
    ChainMap out = ChainMap::zero(module, module, 0);
    for (std::size_t i = 0; i < basis_maps.size(); ++i) {
        if (a[i].is_zero()) continue;
        out = out + basis_maps[i].scaled(a[i]);
    }
    return out;
}

EndAlgebra end_algebra(const DgModule& m) {
    const Field& k = m.algebra()->field();
    EndAlgebra out;
    out.module = m;
    out.basis_maps = chain_maps_basis(m, m, 0);
    int n = static_cast<int>(out.basis_maps.size());

    HomSpace space = hom_space(m, m, 0);
    Mat basis_mat(k, space.dim, n);
    for (int c = 0; c < n; ++c) basis_mat.set_col(c, flatten(space, out.basis_maps[static_cast<std::size_t>(c)], k));

    // products and the unit, re-expressed in the chain map basis
    Mat rhs(k, space.dim, n * n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ChainMap prod = compose(out.basis_maps[static_cast<std::size_t>(i)], out.basis_maps[static_cast<std::size_t>(j)]);
            rhs.set_col(i * n + j, flatten(space, prod, k));
        }
    rhs.set_col(n * n, flatten(space, ChainMap::identity(m), k));
    std::optional<Mat> coords = solve(basis_mat, rhs);
    if (!coords) throw std::logic_error("end_algebra: composition left the chain map space");

    std::vector<std::vector<FdaElement>> mult(static_cast<std::size_t>(n),
                                              std::vector<FdaElement>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = coords->col(i * n + j);
    FdaElement unit = coords->col(n * n);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("f" + std::to_string(i));
    out.algebra = FiniteDimAlgebra::validate(k, std::move(labels), std::move(mult), std::move(unit));
    return out;
}

std::vector<FdaElement> radical_basis(const FiniteDimAlgebra& e) {
    const Field& k = e.field();
    if (k.is_prime_field() && k.characteristic() <= static_cast<std::uint64_t>(e.dim()))
        throw Error(ErrorCode::UnsupportedCharacteristic,
                    "trace-form radical needs char 0 or p > dim, got p = " + std::to_string(k.characteristic()) +
                        ", dim = " + std::to_string(e.dim()));
    int n = e.dim();
    std::vector<Mat> left;
    left.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) left.push_back(e.left_mult_matrix(e.basis_vec(i)));
    Mat gram(k, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram.at(i, j) = trace(left[static_cast<std::size_t>(i)] * left[static_cast<std::size_t>(j)]);
    std::vector<FdaElement> rad = kernel_basis(gram);

    // re-verify nilpotency of the computed subspace
    std::vector<FdaElement> layer = rad;
    for (int step = 0; step <= n && !layer.empty(); ++step) {
        if (step == n) throw Error(ErrorCode::VerificationFailed, "trace-form kernel is not nilpotent");
        SpanBuilder span(k, n);
        std::vector<FdaElement> next;
        for (const FdaElement& a : layer)
            for (const FdaElement& b : rad) {
                FdaElement p = e.multiply(a, b);
                if (!e.is_zero_elem(p) && span.insert(p)) next.push_back(p);
            }
        layer = std::move(next);
    }
    return rad;
}

namespace {

/// Minimal polynomial of a within the corner algebra with unit u (powers
/// start at u).
Poly corner_min_poly(const FiniteDimAlgebra& e, const FdaElement& a, const FdaElement& u) {
    const Field& k = e.field();
    SpanBuilder span(k, e.dim());
    std::vector<FdaElement> powers;
    FdaElement cur = u;
    for (;;) {
        if (!span.insert(cur)) break;
        powers.push_back(cur);
        cur = e.multiply(cur, a);
    }
    int m = static_cast<int>(powers.size());
    Mat sys(k, e.dim(), m);
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < e.dim(); ++r) sys.at(r, c) = powers[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    Mat rhs(k, e.dim(), 1);
    for (int r = 0; r < e.dim(); ++r) rhs.at(r, 0) = cur[static_cast<std::size_t>(r)];
    std::optional<Mat> x = solve(sys, rhs);
    if (!x) throw std::logic_error("corner_min_poly: dependent power not in span");
    Poly mu(static_cast<std::size_t>(m) + 1, Scalar::zero(k));
    for (int c = 0; c < m; ++c) mu[static_cast<std::size_t>(c)] = -x->at(c, 0);
    mu[static_cast<std::size_t>(m)] = Scalar::one(k);
    return mu;
}

FdaElement corner_eval_poly(const FiniteDimAlgebra& e, const Poly& p, const FdaElement& a, const FdaElement& u) {
    FdaElement out = e.zero();
    FdaElement pow = u;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p[i].is_zero()) out = e.add(out, e.scale(pow, p[i]));
        if (i + 1 < p.size()) pow = e.multiply(pow, a);
    }
    return out;
}

/// CRT idempotent: u(x) with u ≡ 1 mod primary, u ≡ 0 mod rest,
/// primary * rest = mu with gcd(primary, rest) = 1.
Poly crt_idempotent_poly(const Poly& primary, const Poly& rest, const Field& k) {
    PolyGcdExt ext = poly_gcdext(rest, primary, k);
    if (poly_deg(ext.g) != 0) throw std::logic_error("crt_idempotent_poly: factors are not coprime");
    return poly_mul(ext.s, rest, k); // s*rest ≡ 1 mod primary, ≡ 0 mod rest
}

/// Complete orthogonal primitive idempotents of a simple component T ⊂ S
/// (basis span_T, unit u, center dimension d), recursing on corner algebras.
void split_simple_component(const FiniteDimAlgebra& s, const std::vector<FdaElement>& span_t,
                            const FdaElement& u, int center_dim, std::mt19937_64& rng,
                            std::vector<FdaElement>& out) {
    const Field& k = s.field();
    int dim_t = static_cast<int>(span_t.size());
    if (dim_t == center_dim) { // a field: u is primitive
        out.push_back(u);
        return;
    }
    if (!k.is_prime_field())
        throw Error(ErrorCode::UnsupportedField,
                    "splitting a non-commutative semisimple component needs factorization (prime fields only)");

    const int attempts = 64 + 8 * dim_t;
    for (int trial = 0; trial < attempts; ++trial) {
        FdaElement a;
        if (trial < dim_t) {
            a = span_t[static_cast<std::size_t>(trial)];
        } else {
            std::vector<Scalar> coeffs = random_coords(k, dim_t, rng);
            a = s.zero();
            for (int i = 0; i < dim_t; ++i) a = s.add(a, s.scale(span_t[static_cast<std::size_t>(i)], coeffs[static_cast<std::size_t>(i)]));
        }
        Poly mu = corner_min_poly(s, a, u);
        if (poly_deg(mu) < 2) continue;
        std::vector<PolyFactor> factors = factor_poly_fp(mu, rng());
        if (factors.size() < 2) continue;
        Poly primary{Scalar::one(k)};
        for (int i = 0; i < factors[0].multiplicity; ++i) primary = poly_mul(primary, factors[0].factor, k);
        Poly rest = poly_divmod(mu, primary, k).first;
        Poly upoly = crt_idempotent_poly(primary, rest, k);
        FdaElement idem = corner_eval_poly(s, upoly, a, u);
        if (s.is_zero_elem(idem) || idem == u) continue;
        if (s.multiply(idem, idem) != idem) continue;
        FdaElement comp = s.sub(u, idem);

        // corner subalgebras e T e and (u-e) T (u-e)
        auto corner_span = [&](const FdaElement& f) {
            SpanBuilder span(k, s.dim());
            std::vector<FdaElement> basis;
            for (const FdaElement& b : span_t) {
                FdaElement c = s.multiply(s.multiply(f, b), f);
                if (!s.is_zero_elem(c) && span.insert(c)) basis.push_back(c);
            }
            return basis;
        };
        split_simple_component(s, corner_span(idem), idem, center_dim, rng, out);
        split_simple_component(s, corner_span(comp), comp, center_dim, rng, out);
        return;
    }
    throw Error(ErrorCode::UnsupportedField, "idempotent search in a simple component exhausted its attempts");
}

/// Primitive idempotents of a semisimple algebra: split off the central
/// components via a primitive element of the center, then refine each simple
/// component.
std::vector<FdaElement> primitive_idempotents_semisimple(const FiniteDimAlgebra& s, std::uint64_t seed) {
    const Field& k = s.field();
    if (s.dim() == 0) return {};
    if (s.dim() == 1) return {s.unit()};

    // center: [z, b_i] = 0 for all i
    int n = s.dim();
    Mat sys(k, n * n, n);
    for (int c = 0; c < n; ++c) {
        FdaElement z = s.basis_vec(c);
        for (int i = 0; i < n; ++i) {
            FdaElement comm = s.sub(s.multiply(z, s.basis_vec(i)), s.multiply(s.basis_vec(i), z));
            for (int r = 0; r < n; ++r) sys.at(i * n + r, c) = comm[static_cast<std::size_t>(r)];
        }
    }
    std::vector<FdaElement> center = kernel_basis(sys);
    int zdim = static_cast<int>(center.size());

    if (!k.is_prime_field()) {
        // over Q: only the local case avoids factorization
        throw Error(ErrorCode::UnsupportedField,
                    "certified idempotent decomposition over Q requires factoring; use F_p or the Fitting route");
    }

    std::mt19937_64 rng(seed ^ 0xa5a5a5a57c15ULL);
    const int attempts = 64 + 8 * zdim;
    Poly mu;
    FdaElement primitive_z;
    bool found = false;
    for (int trial = 0; trial < attempts && !found; ++trial) {
        FdaElement z;
        if (trial < zdim) {
            z = center[static_cast<std::size_t>(trial)];
        } else {
            std::vector<Scalar> coeffs = random_coords(k, zdim, rng);
            z = s.zero();
            for (int i = 0; i < zdim; ++i) z = s.add(z, s.scale(center[static_cast<std::size_t>(i)], coeffs[static_cast<std::size_t>(i)]));
        }
        Poly cand = s.minimal_polynomial(z);
        if (poly_deg(cand) != zdim) continue;
        Poly der = poly_derivative(cand, k);
        if (poly_deg(poly_gcd(cand, der, k)) != 0) continue;
        mu = cand;
        primitive_z = z;
        found = true;
    }
    if (!found)
        throw Error(ErrorCode::UnsupportedField, "no primitive element of the center found");

    std::vector<PolyFactor> factors = factor_poly_fp(mu, seed ^ 0x5bd1e995ULL);
    std::vector<FdaElement> out;
    for (const PolyFactor& pf : factors) {
        Poly rest = poly_divmod(mu, pf.factor, k).first;
        Poly upoly = crt_idempotent_poly(pf.factor, rest, k);
        FdaElement zi = s.eval_poly(upoly, primitive_z);
        if (s.multiply(zi, zi) != zi)
            throw Error(ErrorCode::VerificationFailed, "central idempotent is not idempotent");
        // simple component z_i S
        SpanBuilder span(k, s.dim());
        std::vector<FdaElement> component;
        for (int b = 0; b < s.dim(); ++b) {
            FdaElement v = s.multiply(zi, s.basis_vec(b));
            if (!s.is_zero_elem(v) && span.insert(v)) component.push_back(v);
        }
        split_simple_component(s, component, zi, poly_deg(pf.factor), rng, out);
    }
    return out;
}

} // namespace

std::vector<FdaElement> primitive_idempotents(const FiniteDimAlgebra& e, std::uint64_t seed) {
    const Field& k = e.field();
    std::vector<FdaElement> rad = radical_basis(e); // enforces the characteristic condition
    int n = e.dim();
    int sdim = n - static_cast<int>(rad.size());

    if (sdim == 1) return {e.unit()}; // local, over any field

    // quotient S = E/J in coordinates: complement of J by greedy unit vectors
    SpanBuilder span(k, n);
    for (const FdaElement& v : rad) span.insert(v);
    std::vector<int> comp_coords;
    for (int i = 0; i < n && static_cast<int>(comp_coords.size()) < sdim; ++i) {
        FdaElement unitv(static_cast<std::size_t>(n), Scalar::zero(k));
        unitv[static_cast<std::size_t>(i)] = Scalar::one(k);
        if (span.insert(unitv)) comp_coords.push_back(i);
    }
    Mat basis_change(k, n, n);
    for (std::size_t c = 0; c < rad.size(); ++c) basis_change.set_col(static_cast<int>(c), rad[c]);
    for (int c = 0; c < sdim; ++c) {
        FdaElement unitv(static_cast<std::size_t>(n), Scalar::zero(k));
        unitv[static_cast<std::size_t>(comp_coords[static_cast<std::size_t>(c)])] = Scalar::one(k);
        basis_change.set_col(static_cast<int>(rad.size()) + c, unitv);
    }
    std::optional<Mat> to_parts = inverse(basis_change);
    if (!to_parts) throw std::logic_error("primitive_idempotents: complement is not a complement");

    auto project_s = [&](const FdaElement& v) {
        Mat vec(k, n, 1);
        vec.set_col(0, v);
        Mat parts = *to_parts * vec;
        FdaElement out(static_cast<std::size_t>(sdim), Scalar::zero(k));
        for (int i = 0; i < sdim; ++i) out[static_cast<std::size_t>(i)] = parts.at(static_cast<int>(rad.size()) + i, 0);
        return out;
    };
    auto section_e = [&](const FdaElement& v) {
        FdaElement out = e.zero();
        for (int i = 0; i < sdim; ++i)
            out[static_cast<std::size_t>(comp_coords[static_cast<std::size_t>(i)])] = v[static_cast<std::size_t>(i)];
        return out;
    };

    std::vector<std::vector<FdaElement>> smult(static_cast<std::size_t>(sdim),
                                               std::vector<FdaElement>(static_cast<std::size_t>(sdim)));
    std::vector<FdaElement> s_basis_in_e;
    for (int i = 0; i < sdim; ++i) {
        FdaElement v(static_cast<std::size_t>(sdim), Scalar::zero(k));
        v[static_cast<std::size_t>(i)] = Scalar::one(k);
        s_basis_in_e.push_back(section_e(v));
    }
    for (int i = 0; i < sdim; ++i)
        for (int j = 0; j < sdim; ++j)
            smult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                project_s(e.multiply(s_basis_in_e[static_cast<std::size_t>(i)], s_basis_in_e[static_cast<std::size_t>(j)]));
    std::vector<std::string> slabels;
    for (int i = 0; i < sdim; ++i) slabels.push_back("s" + std::to_string(i));
    FiniteDimAlgebra s = FiniteDimAlgebra::validate(k, std::move(slabels), std::move(smult), project_s(e.unit()));

    std::vector<FdaElement> sprims = primitive_idempotents_semisimple(s, seed);

    // lift through the nilpotent radical with successive orthogonalization
    std::vector<FdaElement> lifted;
    for (std::size_t t = 0; t < sprims.size(); ++t) {
        if (t + 1 == sprims.size()) {
            FdaElement last = e.unit();
            for (const FdaElement& prev : lifted) last = e.sub(last, prev);
            lifted.push_back(last);
            break;
        }
        FdaElement a = section_e(sprims[t]);
        FdaElement f = e.unit();
        for (const FdaElement& prev : lifted) f = e.sub(f, prev);
        a = e.multiply(e.multiply(f, a), f);
        for (int iter = 0;; ++iter) {
            if (iter > 64) throw std::logic_error("idempotent lifting did not converge");
            FdaElement sq = e.multiply(a, a);
            if (sq == a) break;
            // a <- 3a^2 - 2a^3
            FdaElement cube = e.multiply(sq, a);
            a = e.sub(e.scale(sq, Scalar::from_int(k, 3)), e.scale(cube, Scalar::from_int(k, 2)));
        }
        lifted.push_back(a);
    }

    // exact verification
    FdaElement sum = e.zero();
    for (std::size_t i = 0; i < lifted.size(); ++i) {
        if (e.is_zero_elem(lifted[i])) throw Error(ErrorCode::VerificationFailed, "lifted idempotent is zero");
        sum = e.add(sum, lifted[i]);
        for (std::size_t j = 0; j < lifted.size(); ++j) {
            FdaElement prod = e.multiply(lifted[i], lifted[j]);
            if (i == j ? prod != lifted[i] : !e.is_zero_elem(prod))
                throw Error(ErrorCode::VerificationFailed, "lifted idempotents are not orthogonal");
        }
    }
    if (sum != e.unit()) throw Error(ErrorCode::VerificationFailed, "lifted idempotents do not sum to 1");
    return lifted;
}

namespace {

struct ExtractResult {
    DgModule module;    // normalized Filt presentation of im e
    ChainMap inclusion; // module -> m
    ChainMap projection;// m -> module
};

/// Realizes im e for an idempotent chain endomorphism e of a Filt module:
/// minimal generators degreewise (each new generator is the echelon residue
/// of an e(g_i) b vector modulo (previously generated) A^{>0}), differentials
/// and the projection solved exactly, then filt_normalize.
ExtractResult extract_image(const DgModule& m, const ChainMap& e) {
    const GradedAlgebra& A = *m.algebra();
    const Field& k = A.field();
    int n = m.generator_count();

    std::vector<int> degrees;
    for (const DgGenerator& g : m.generators()) degrees.push_back(-g.shift);
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());

    std::map<int, GradedSlice> slices;
    auto slice_of = [&](int d) -> const GradedSlice& {
        auto it = slices.find(d);
        if (it == slices.end()) it = slices.emplace(d, module_component(m, d)).first;
        return it->second;
    };

    struct NewGen {
        int degree;
        VertexId vertex;
        std::vector<Scalar> coords; // in slice_of(degree)
    };
    std::vector<NewGen> gens;

    // expand (module element given by coords at degree dsrc) * basis element b
    auto mult_into = [&](int dsrc, const std::vector<Scalar>& coords, BasisId b, int dtgt) {
        const GradedSlice& src = slice_of(dsrc);
        const GradedSlice& tgt = slice_of(dtgt);
        std::vector<Scalar> out(tgt.coords.size(), Scalar::zero(k));
        AlgebraElement eb = A.basis_element(b);
        for (std::size_t p = 0; p < src.coords.size(); ++p) {
            if (coords[p].is_zero()) continue;
            auto [j, c] = src.coords[p];
            AlgebraElement prod = multiply(A.basis_element(c), eb);
            for (const auto& [t, coeff] : prod.terms()) {
                auto pos = tgt.index.find({j, t});
                if (pos == tgt.index.end()) throw std::logic_error("extract_image: product coordinate missing");
                out[static_cast<std::size_t>(pos->second)] = out[static_cast<std::size_t>(pos->second)] + coords[p] * coeff;
            }
        }
        return out;
    };

    for (int d : degrees) {
        const GradedSlice& slice = slice_of(d);
        SpanBuilder span(k, static_cast<int>(slice.coords.size()));
        // previously generated times A^{>0}
        for (const NewGen& v : gens) {
            int bdeg = d - v.degree;
            if (bdeg <= 0) continue;
            if (bdeg > A.degree_cap()) throw Error(ErrorCode::CapExceeded, "image extraction needs components above the cap");
            for (VertexId y = 0; y < A.vertex_count(); ++y)
                for (BasisId b : A.component_basis(v.vertex, y, bdeg)) span.insert(mult_into(v.degree, v.coords, b, d));
        }
        // e(M)^d vectors: e(g_i) b
        for (int i = 0; i < n; ++i) {
            int bdeg = d + m.generators()[static_cast<std::size_t>(i)].shift;
            if (bdeg < 0) continue;
            if (bdeg > A.degree_cap()) throw Error(ErrorCode::CapExceeded, "image extraction needs components above the cap");
            VertexId xi = m.generators()[static_cast<std::size_t>(i)].vertex;
            for (VertexId y = 0; y < A.vertex_count(); ++y)
                for (BasisId b : A.component_basis(xi, y, bdeg)) {
                    std::vector<Scalar> vec(slice.coords.size(), Scalar::zero(k));
                    bool any = false;
                    AlgebraElement eb = A.basis_element(b);
                    for (int j = 0; j < n; ++j) {
                        auto it = e.entries.find({j, i});
                        if (it == e.entries.end()) continue;
                        AlgebraElement prod = multiply(it->second, eb);
                        for (const auto& [t, coeff] : prod.terms()) {
                            auto pos = slice.index.find({j, t});
                            if (pos == slice.index.end()) throw std::logic_error("extract_image: e-image coordinate missing");
                            vec[static_cast<std::size_t>(pos->second)] = vec[static_cast<std::size_t>(pos->second)] + coeff;
                            any = true;
                        }
                    }
                    if (!any) continue;
                    std::optional<std::vector<Scalar>> residue = span.insert(vec);
                    if (residue) gens.push_back(NewGen{d, y, *residue});
                }
        }
    }

    // the multiplication matrix (t, beta) -> slice(d) used by both the
    // differential and the projection solves
    auto mult_matrix = [&](int d) {
        std::vector<std::pair<int, BasisId>> cols;
        for (std::size_t t = 0; t < gens.size(); ++t) {
            int bdeg = d - gens[t].degree;
            if (bdeg < 0) continue;
            if (bdeg > A.degree_cap()) throw Error(ErrorCode::CapExceeded, "image extraction needs components above the cap");
            for (VertexId y = 0; y < A.vertex_count(); ++y)
                for (BasisId b : A.component_basis(gens[t].vertex, y, bdeg)) cols.push_back({static_cast<int>(t), b});
        }
        const GradedSlice& tgt = slice_of(d);
        Mat mat(k, static_cast<int>(tgt.coords.size()), static_cast<int>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            auto [t, b] = cols[c];
            std::vector<Scalar> v = mult_into(gens[static_cast<std::size_t>(t)].degree,
                                              gens[static_cast<std::size_t>(t)].coords, b, d);
            mat.set_col(static_cast<int>(c), v);
        }
        return std::make_pair(mat, cols);
    };

    std::vector<DgGenerator> out_gens;
    for (const NewGen& v : gens) out_gens.push_back(DgGenerator{-v.degree, v.vertex});

    ElementMatrix out_diff;
    std::map<int, std::vector<int>> by_degree; // degree -> gen indices
    for (std::size_t t = 0; t < gens.size(); ++t) by_degree[gens[t].degree].push_back(static_cast<int>(t));

    for (const auto& [d, idxs] : by_degree) {
        // all differentials of degree-d generators land in slice d+1
        bool all_zero = true;
        const GradedSlice& src = slice_of(d);
        std::vector<std::vector<Scalar>> rhs_cols;
        GradedSlice tgt;
        Mat dmat(k, 0, 0);
        for (int s : idxs) {
            // compute d(v_s) lazily only once the target slice exists
            (void)s;
        }
        tgt = module_component(m, d + 1);
        dmat = module_diff_matrix(m, d, src, tgt);
        for (int s : idxs) {
            Mat coord(k, static_cast<int>(src.coords.size()), 1);
            coord.set_col(0, gens[static_cast<std::size_t>(s)].coords);
            Mat dv = dmat * coord;
            rhs_cols.push_back(dv.col(0));
            for (const Scalar& c : rhs_cols.back())
                if (!c.is_zero()) all_zero = false;
        }
        if (all_zero) continue;
        auto [mmat, cols] = mult_matrix(d + 1);
        Mat rhs(k, mmat.rows(), static_cast<int>(rhs_cols.size()));
        for (std::size_t c = 0; c < rhs_cols.size(); ++c) rhs.set_col(static_cast<int>(c), rhs_cols[c]);
        std::optional<Mat> sol = solve(mmat, rhs);
        if (!sol) throw std::logic_error("extract_image: differential does not lie in the image submodule");
        for (std::size_t c = 0; c < idxs.size(); ++c) {
            int s = idxs[c];
            for (std::size_t cc = 0; cc < cols.size(); ++cc) {
                const Scalar& coeff = sol->at(static_cast<int>(cc), static_cast<int>(c));
                if (coeff.is_zero()) continue;
                auto [t, b] = cols[cc];
                std::pair<int, int> pos{t, s};
                auto it = out_diff.find(pos);
                if (it == out_diff.end()) {
                    AlgebraElement elt = A.zero_element(A.basis_elem(b).degree, gens[static_cast<std::size_t>(t)].vertex,
                                                        gens[static_cast<std::size_t>(s)].vertex);
                    elt.set_coeff(b, coeff);
                    out_diff.emplace(pos, elt);
                } else {
                    it->second.set_coeff(b, it->second.coeff(b) + coeff);
                }
            }
        }
    }

    DgModule raw = DgModule::validate(m.algebra(), out_gens, out_diff);

    // inclusion: generator s maps to its coordinate vector
    ChainMap incl_raw = ChainMap::zero(raw, m, 0);
    for (std::size_t s = 0; s < gens.size(); ++s) {
        const GradedSlice& src = slice_of(gens[s].degree);
        std::map<int, AlgebraElement> per_row;
        for (std::size_t p = 0; p < src.coords.size(); ++p) {
            if (gens[s].coords[p].is_zero()) continue;
            auto [j, b] = src.coords[p];
            auto it = per_row.find(j);
            if (it == per_row.end()) {
                AlgebraElement elt = A.zero_element(A.basis_elem(b).degree,
                                                    m.generators()[static_cast<std::size_t>(j)].vertex, gens[s].vertex);
                elt.set_coeff(b, gens[s].coords[p]);
                per_row.emplace(j, elt);
            } else {
                it->second.set_coeff(b, it->second.coeff(b) + gens[s].coords[p]);
            }
        }
        for (const auto& [j, elt] : per_row)
            if (!elt.is_zero()) incl_raw.entries.insert_or_assign({j, static_cast<int>(s)}, elt);
    }

    // projection: coordinates of e(g_i) over the new generators
    ChainMap proj_raw = ChainMap::zero(m, raw, 0);
    std::map<int, std::vector<int>> m_by_degree;
    for (int i = 0; i < n; ++i) m_by_degree[-m.generators()[static_cast<std::size_t>(i)].shift].push_back(i);
    for (const auto& [d, idxs] : m_by_degree) {
        const GradedSlice& slice = slice_of(d);
        auto [mmat, cols] = mult_matrix(d);
        Mat rhs(k, mmat.rows(), static_cast<int>(idxs.size()));
        bool any = false;
        for (std::size_t c = 0; c < idxs.size(); ++c) {
            int i = idxs[c];
            std::vector<Scalar> vec(slice.coords.size(), Scalar::zero(k));
            for (int j = 0; j < n; ++j) {
                auto it = e.entries.find({j, i});
                if (it == e.entries.end()) continue;
                for (const auto& [t, coeff] : it->second.terms()) {
                    auto pos = slice.index.find({j, t});
                    if (pos == slice.index.end()) throw std::logic_error("extract_image: projection coordinate missing");
                    vec[static_cast<std::size_t>(pos->second)] = vec[static_cast<std::size_t>(pos->second)] + coeff;
                    any = true;
                }
            }
            rhs.set_col(static_cast<int>(c), vec);
        }
        if (!any) continue;
        std::optional<Mat> sol = solve(mmat, rhs);
        if (!sol) throw std::logic_error("extract_image: e-image does not lie in the generated submodule");
        for (std::size_t c = 0; c < idxs.size(); ++c) {
            int i = idxs[c];
            for (std::size_t cc = 0; cc < cols.size(); ++cc) {
                const Scalar& coeff = sol->at(static_cast<int>(cc), static_cast<int>(c));
                if (coeff.is_zero()) continue;
                auto [t, b] = cols[cc];
                std::pair<int, int> pos{t, i};
                auto it = proj_raw.entries.find(pos);
                if (it == proj_raw.entries.end()) {
                    AlgebraElement elt = A.zero_element(A.basis_elem(b).degree, gens[static_cast<std::size_t>(t)].vertex,
                                                        m.generators()[static_cast<std::size_t>(i)].vertex);
                    elt.set_coeff(b, coeff);
                    proj_raw.entries.emplace(pos, elt);
                } else {
                    it->second.set_coeff(b, it->second.coeff(b) + coeff);
                }
            }
        }
    }

    FiltNormalization norm = filt_normalize(raw);
    ExtractResult out{norm.result, compose(incl_raw, norm.iso_inverse), compose(norm.iso, proj_raw)};
    return out;
}

} // namespace

SplitResult split_idempotent(const DgModule& m, const ChainMap& e) {
    if (!(e.source == m) || !(e.target == m) || e.degree != 0)
        throw Error(ErrorCode::ValidationError, "split_idempotent needs a degree-0 endomorphism of m");
    if (!is_chain_map(e)) throw Error(ErrorCode::ValidationError, "split_idempotent: e is not a chain map");
    if (!(compose(e, e) == e)) throw Error(ErrorCode::NotIdempotent, "e∘e differs from e");
    if (!m.is_filt()) throw Error(ErrorCode::NotFiltForm, "split_idempotent needs a Filt module");

    ChainMap comp = ChainMap::identity(m) - e;
    ExtractResult img = extract_image(m, e);
    ExtractResult ker = extract_image(m, comp);

    SplitResult out{img.module, ker.module, img.inclusion, img.projection, ker.inclusion, ker.projection};

    // exact witnesses: orthogonal idempotents summing to the identity
    if (!(compose(out.proj1, out.incl1) == ChainMap::identity(out.first)) ||
        !(compose(out.proj2, out.incl2) == ChainMap::identity(out.second)) ||
        !compose(out.proj1, out.incl2).is_zero() || !compose(out.proj2, out.incl1).is_zero() ||
        !(compose(out.incl1, out.proj1) + compose(out.incl2, out.proj2) == ChainMap::identity(m)))
        throw Error(ErrorCode::VerificationFailed, "split_idempotent witnesses failed their identities");

    // assembled comparison map first ⊕ second -> m must be an isomorphism;
    // replay the stable sort used by direct_sum to place the columns
    DgModule sum = direct_sum(out.first, out.second);
    int n1 = out.first.generator_count();
    int total = n1 + out.second.generator_count();
    std::vector<int> order(static_cast<std::size_t>(total));
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> shifts;
    for (const DgGenerator& g : out.first.generators()) shifts.push_back(g.shift);
    for (const DgGenerator& g : out.second.generators()) shifts.push_back(g.shift);
    std::stable_sort(order.begin(), order.end(),
                     [&shifts](int p, int q) { return shifts[static_cast<std::size_t>(p)] > shifts[static_cast<std::size_t>(q)]; });
    ChainMap cmp = ChainMap::zero(sum, m, 0);
    for (int col = 0; col < total; ++col) {
        int src = order[static_cast<std::size_t>(col)];
        const ChainMap& part = src < n1 ? out.incl1 : out.incl2;
        int src_col = src < n1 ? src : src - n1;
        for (const auto& [pos, a] : part.entries)
            if (pos.second == src_col) cmp.entries.insert_or_assign({pos.first, col}, a);
    }
    if (!is_chain_map(cmp) || !is_dgmod_iso(cmp))
        throw Error(ErrorCode::VerificationFailed, "assembled comparison map is not an isomorphism");
    return out;
}

FittingResult fitting(const DgModule& m, const ChainMap& f) {
    if (!(f.source == m) || !(f.target == m) || f.degree != 0)
        throw Error(ErrorCode::ValidationError, "fitting needs a degree-0 endomorphism of m");
    if (!is_chain_map(f)) throw Error(ErrorCode::ValidationError, "fitting: f is not a chain map");
    const Field& k = m.algebra()->field();

    // minimal polynomial of f in End(M) via flat coordinates
    HomSpace space = hom_space(m, m, 0);
    SpanBuilder span(k, space.dim);
    std::vector<ChainMap> powers;
    ChainMap cur = ChainMap::identity(m);
    for (;;) {
        if (!span.insert(flatten(space, cur, k))) break;
        powers.push_back(cur);
        cur = compose(cur, f);
    }
    int deg = static_cast<int>(powers.size());
    Mat sys(k, space.dim, deg);
    for (int c = 0; c < deg; ++c) sys.set_col(c, flatten(space, powers[static_cast<std::size_t>(c)], k));
    Mat rhs(k, space.dim, 1);
    rhs.set_col(0, flatten(space, cur, k));
    std::optional<Mat> x = solve(sys, rhs);
    if (!x) throw std::logic_error("fitting: dependent power not in span");
    Poly mu(static_cast<std::size_t>(deg) + 1, Scalar::zero(k));
    for (int c = 0; c < deg; ++c) mu[static_cast<std::size_t>(c)] = -x->at(c, 0);
    mu[static_cast<std::size_t>(deg)] = Scalar::one(k);

    int m0 = 0;
    while (m0 < static_cast<int>(mu.size()) && mu[static_cast<std::size_t>(m0)].is_zero()) ++m0;

    ChainMap eps = ChainMap::identity(m);
    if (m0 > 0) {
        // mu = t^m0 * nu with nu(0) != 0; the Fitting idempotent is
        // (s * t^m0)(f) where s t^m0 + t nu = 1
        Poly nu(mu.begin() + m0, mu.end());
        Poly tm(static_cast<std::size_t>(m0) + 1, Scalar::zero(k));
        tm[static_cast<std::size_t>(m0)] = Scalar::one(k);
        PolyGcdExt ext = poly_gcdext(tm, nu, k);
        if (poly_deg(ext.g) != 0) throw std::logic_error("fitting: t^m and nu are not coprime");
        Poly idem_poly = poly_mul(ext.s, tm, k);
        // evaluate at f using the precomputed powers (extend if needed)
        std::vector<ChainMap> pw = powers;
        while (pw.size() < idem_poly.size()) pw.push_back(compose(pw.back(), f));
        eps = ChainMap::zero(m, m, 0);
        for (std::size_t i = 0; i < idem_poly.size(); ++i) {
            if (idem_poly[i].is_zero()) continue;
            eps = eps + pw[i].scaled(idem_poly[i]);
        }
    }
    if (!(compose(eps, eps) == eps))
        throw Error(ErrorCode::VerificationFailed, "Fitting idempotent is not idempotent");

    FittingResult out;
    out.exponent = std::max(m0, 1);
    out.fitting_idempotent = eps;
    out.split = split_idempotent(m, eps);
    out.image_part = out.split.first;
    out.kernel_part = out.split.second;
    return out;
}

namespace {

bool summands_match_multiset(const DgModule& m, const DgModule& n) {
    if (m.generator_count() != n.generator_count()) return false;
    std::vector<std::pair<int, int>> a, b;
    for (const DgGenerator& g : m.generators()) a.push_back({g.shift, g.vertex});
    for (const DgGenerator& g : n.generators()) b.push_back({g.shift, g.vertex});
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

bool iso_by_basis_scan(const DgModule& m, const DgModule& n) {
    if (!summands_match_multiset(m, n)) return false;
    if (m.is_zero()) return true;
    for (const ChainMap& f : chain_maps_basis(m, n, 0))
        if (rank(f.scalar_part()) == m.generator_count()) return true;
    return false;
}

} // namespace

Decomposition krs_decompose(const DgModule& m, std::uint64_t seed) {
    if (!m.is_filt()) throw Error(ErrorCode::NotFiltForm, "krs_decompose needs a Filt module");
    Decomposition out;
    if (m.is_zero()) {
        out.certified = true;
        return out;
    }
    const Field& k = m.algebra()->field();

    if (k.is_prime_field()) {
        EndAlgebra e = end_algebra(m);
        if (k.characteristic() <= static_cast<std::uint64_t>(e.algebra.dim()))
            throw Error(ErrorCode::UnsupportedCharacteristic,
                        "certified decomposition needs p > dim End(M) = " + std::to_string(e.algebra.dim()));
        std::vector<FdaElement> prims = primitive_idempotents(e.algebra, seed);
        for (const FdaElement& eps : prims) {
            ChainMap pe = e.realize(eps);
            ExtractResult part = extract_image(m, pe);
            out.summands.push_back(part.module);
            out.inclusions.push_back(part.inclusion);
            out.projections.push_back(part.projection);
        }
        // certificates: local endomorphism rings
        for (const DgModule& s : out.summands) {
            EndAlgebra es = end_algebra(s);
            std::vector<FdaElement> rad = radical_basis(es.algebra);
            int quotient_dim = es.algebra.dim() - static_cast<int>(rad.size());
            out.certificates.push_back(quotient_dim == 1 ? SummandCertificate::Local
                                                         : SummandCertificate::LocalNonSplit);
        }
        out.certified = true;
    } else {
        // best-effort Fitting search over Q
        struct Item {
            DgModule mod;
            ChainMap incl, proj;
        };
        std::vector<Item> work{{m, ChainMap::identity(m), ChainMap::identity(m)}};
        std::vector<Item> final_items;
        std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dULL);
        while (!work.empty()) {
            Item item = work.back();
            work.pop_back();
            EndAlgebra e = end_algebra(item.mod);
            bool split_found = false;
            const int random_tries = 24;
            for (int trial = 0; trial < e.algebra.dim() + random_tries && !split_found; ++trial) {
                ChainMap f = trial < e.algebra.dim()
                                 ? e.basis_maps[static_cast<std::size_t>(trial)]
                                 : e.realize(random_coords(k, e.algebra.dim(), rng));
                FittingResult fit = fitting(item.mod, f);
                if (fit.kernel_part.is_zero() || fit.image_part.is_zero()) continue;
                work.push_back(Item{fit.split.first, compose(item.incl, fit.split.incl1),
                                    compose(fit.split.proj1, item.proj)});
                work.push_back(Item{fit.split.second, compose(item.incl, fit.split.incl2),
                                    compose(fit.split.proj2, item.proj)});
                split_found = true;
            }
            if (!split_found) final_items.push_back(item);
        }
        for (Item& item : final_items) {
            EndAlgebra es = end_algebra(item.mod);
            std::vector<FdaElement> rad = radical_basis(es.algebra);
            int quotient_dim = es.algebra.dim() - static_cast<int>(rad.size());
            out.summands.push_back(item.mod);
            out.inclusions.push_back(item.incl);
            out.projections.push_back(item.proj);
            out.certificates.push_back(quotient_dim == 1 ? SummandCertificate::Local
                                                         : SummandCertificate::NoSplittingFound);
        }
        out.certified = std::all_of(out.certificates.begin(), out.certificates.end(),
                                    [](SummandCertificate c) { return c == SummandCertificate::Local; });
    }

    // deterministic summand order: generator count, then presentation key
    std::vector<std::size_t> order(out.summands.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&out](std::size_t a, std::size_t b) {
        int ga = out.summands[a].generator_count();
        int gb = out.summands[b].generator_count();
        if (ga != gb) return ga < gb;
        return out.summands[a].presentation_key() < out.summands[b].presentation_key();
    });
    Decomposition sorted;
    sorted.certified = out.certified;
    for (std::size_t i : order) {
        sorted.summands.push_back(out.summands[i]);
        sorted.inclusions.push_back(out.inclusions[i]);
        sorted.projections.push_back(out.projections[i]);
        sorted.certificates.push_back(out.certificates[i]);
    }

    // verify the assembled decomposition: orthogonal idempotents summing to 1
    ChainMap acc = ChainMap::zero(m, m, 0);
    for (std::size_t i = 0; i < sorted.summands.size(); ++i) {
        if (!(compose(sorted.projections[i], sorted.inclusions[i]) == ChainMap::identity(sorted.summands[i])))
            throw Error(ErrorCode::VerificationFailed, "decomposition witness: proj∘incl is not the identity");
        acc = acc + compose(sorted.inclusions[i], sorted.projections[i]);
    }
    if (!(acc == ChainMap::identity(m)))
        throw Error(ErrorCode::VerificationFailed, "decomposition witness: idempotents do not sum to 1");
    return sorted;
}

bool modules_isomorphic(const DgModule& m, const DgModule& n, std::uint64_t seed) {
    if (!m.algebra()->same_as(*n.algebra()))
        throw Error(ErrorCode::ValidationError, "isomorphism test across different algebras");
    if (!m.is_filt() || !n.is_filt()) throw Error(ErrorCode::NotFiltForm, "isomorphism test needs Filt modules");
    if (!summands_match_multiset(m, n)) return false;
    if (m.is_zero()) return true;

    const Field& k = m.algebra()->field();
    std::vector<ChainMap> basis = chain_maps_basis(m, n, 0);
    for (const ChainMap& f : basis)
        if (rank(f.scalar_part()) == m.generator_count()) return true;

    std::mt19937_64 rng(seed ^ 0x94d049bb133111ebULL);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Scalar> coeffs = random_coords(k, static_cast<int>(basis.size()), rng);
        Mat bar(k, n.generator_count(), m.generator_count());
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (coeffs[i].is_zero()) continue;
            Mat part = basis[i].scalar_part();
            for (int r = 0; r < bar.rows(); ++r)
                for (int c = 0; c < bar.cols(); ++c) bar.at(r, c) = bar.at(r, c) + part.at(r, c) * coeffs[i];
        }
        if (rank(bar) == m.generator_count()) return true;
    }

    // no witness found: compare certified KRS multisets
    Decomposition dm = krs_decompose(m, seed);
    Decomposition dn = krs_decompose(n, seed);
    if (!dm.certified || !dn.certified)
        throw Error(ErrorCode::UnsupportedField,
                    "isomorphism completeness needs a certified decomposition (use F_p)");
    if (dm.summands.size() != dn.summands.size()) return false;
    std::vector<bool> used(dn.summands.size(), false);
    for (const DgModule& a : dm.summands) {
        bool matched = false;
        for (std::size_t j = 0; j < dn.summands.size(); ++j) {
            if (used[j]) continue;
            if (iso_by_basis_scan(a, dn.summands[j])) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace dgper
