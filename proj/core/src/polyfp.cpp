#include "dgper/polyfp.hpp"

#include <algorithm>
#include <random>

namespace dgper {

Poly poly_trim(Poly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_make_monic(const Poly& p) {
    if (p.empty()) return p;
    Scalar inv = p.back().inverse();
    Poly out = p;
    for (Scalar& c : out) c = c * inv;
    return out;
}

Poly poly_add(const Poly& a, const Poly& b, const Field& k) {
    Poly out(std::max(a.size(), b.size()), Scalar::zero(k));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = out[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = out[i] + b[i];
    return poly_trim(std::move(out));
}

Poly poly_sub(const Poly& a, const Poly& b, const Field& k) {
    Poly out(std::max(a.size(), b.size()), Scalar::zero(k));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = out[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = out[i] - b[i];
    return poly_trim(std::move(out));
}

Poly poly_mul(const Poly& a, const Poly& b, const Field& k) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Scalar::zero(k));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            out[i + j] = out[i + j] + a[i] * b[j];
        }
    }
    return poly_trim(std::move(out));
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b, const Field& k) {
    if (b.empty()) throw std::logic_error("polynomial division by zero");
    Poly rem = a;
    if (poly_deg(a) < poly_deg(b)) return {{}, poly_trim(std::move(rem))};
    Poly quot(a.size() - b.size() + 1, Scalar::zero(k));
    Scalar lead_inv = b.back().inverse();
    for (int i = poly_deg(a) - poly_deg(b); i >= 0; --i) {
        std::size_t top = static_cast<std::size_t>(i) + b.size() - 1;
        if (top >= rem.size() || rem[top].is_zero()) continue;
        Scalar c = rem[top] * lead_inv;
        quot[static_cast<std::size_t>(i)] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            rem[static_cast<std::size_t>(i) + j] = rem[static_cast<std::size_t>(i) + j] - c * b[j];
    }
    return {poly_trim(std::move(quot)), poly_trim(std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& b, const Field& k) { return poly_divmod(a, b, k).second; }

Poly poly_gcd(Poly a, Poly b, const Field& k) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        Poly r = poly_mod(a, b, k);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : poly_make_monic(a);
}

PolyGcdExt poly_gcdext(const Poly& a, const Poly& b, const Field& k) {
    Poly r0 = poly_trim(a), r1 = poly_trim(b);
    Poly s0{Scalar::one(k)}, s1{};
    Poly t0{}, t1{Scalar::one(k)};
    while (!r1.empty()) {
        auto [q, r] = poly_divmod(r0, r1, k);
        Poly s = poly_sub(s0, poly_mul(q, s1, k), k);
        Poly t = poly_sub(t0, poly_mul(q, t1, k), k);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    PolyGcdExt out;
    if (r0.empty()) {
        out.g = {};
        out.s = {};
        out.t = {};
        return out;
    }
    Scalar inv = r0.back().inverse();
    out.g = poly_make_monic(r0);
    for (Scalar& c : s0) c = c * inv;
    for (Scalar& c : t0) c = c * inv;
    out.s = poly_trim(std::move(s0));
    out.t = poly_trim(std::move(t0));
    return out;
}

Poly poly_derivative(const Poly& a, const Field& k) {
    if (a.size() <= 1) return {};
    Poly out(a.size() - 1, Scalar::zero(k));
    for (std::size_t i = 1; i < a.size(); ++i)
        out[i - 1] = a[i] * Scalar::from_int(k, static_cast<long long>(i));
    return poly_trim(std::move(out));
}

Poly poly_powmod(const Poly& base, const mpz_class& exp, const Poly& mod, const Field& k) {
    Poly result{Scalar::one(k)};
    Poly b = poly_mod(base, mod, k);
    mpz_class e = exp;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = poly_mod(poly_mul(result, b, k), mod, k);
        b = poly_mod(poly_mul(b, b, k), mod, k);
        e >>= 1;
    }
    return result;
}

namespace {

Poly random_poly(int max_deg, const Field& k, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> coeff(0, k.characteristic() - 1);
    Poly out;
    for (int i = 0; i <= max_deg; ++i)
        out.push_back(Scalar::from_int(k, static_cast<long long>(coeff(rng))));
    return poly_trim(std::move(out));
}

/// Equal-degree splitting of a monic squarefree product of irreducibles of
/// degree d (Cantor-Zassenhaus for odd p; p = 2 is unreachable here since the
/// callers guarantee p > deg f >= 2d >= 2).
void equal_degree_split(const Poly& f, int d, const Field& k, std::mt19937_64& rng,
                        std::vector<Poly>& out) {
    if (poly_deg(f) == d) {
        out.push_back(poly_make_monic(f));
        return;
    }
    mpz_class p(static_cast<unsigned long>(k.characteristic()));
    mpz_class q;
    mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
    mpz_class half = (q - 1) / 2;
    for (;;) {
        Poly r = random_poly(poly_deg(f) - 1, k, rng);
        if (poly_deg(r) < 1) continue;
        Poly g = poly_gcd(f, r, k);
        if (poly_deg(g) > 0 && poly_deg(g) < poly_deg(f)) {
            equal_degree_split(g, d, k, rng, out);
            equal_degree_split(poly_divmod(f, g, k).first, d, k, rng, out);
            return;
        }
        Poly h = poly_powmod(r, half, f, k);
        h = poly_sub(h, Poly{Scalar::one(k)}, k);
        g = poly_gcd(f, h, k);
        if (poly_deg(g) > 0 && poly_deg(g) < poly_deg(f)) {
            equal_degree_split(g, d, k, rng, out);
            equal_degree_split(poly_divmod(f, g, k).first, d, k, rng, out);
            return;
        }
    }
}

bool poly_less(const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] == b[i]) continue;
        return a[i].str() < b[i].str();
    }
    return false;
}

} // namespace

std::vector<PolyFactor> factor_poly_fp(const Poly& f_in, std::uint64_t seed) {
    Poly f = poly_trim(f_in);
    const Field k = f.empty() ? Field::rationals() : f[0].field();
    if (!k.is_prime_field()) throw Error(ErrorCode::UnsupportedField, "polynomial factorization is implemented over prime fields only");
    if (poly_deg(f) < 1) throw std::logic_error("factor_poly_fp: constant polynomial");
    f = poly_make_monic(f);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);

    std::vector<PolyFactor> out;
    // the callers only factor minimal polynomials of degree < p, so f' never
    // degenerates and the squarefree part carries every distinct factor
    Poly d = poly_derivative(f, k);
    if (d.empty()) throw std::logic_error("factor_poly_fp: inseparable polynomial (degree >= p)");
    Poly sqfree = poly_divmod(f, poly_gcd(f, d, k), k).first;

    // distinct-degree decomposition of the squarefree part, then
    // Cantor-Zassenhaus equal-degree splits, then multiplicities by trial
    // division against f
    Poly w = sqfree;
    Poly x{Scalar::zero(k), Scalar::one(k)};
    Poly frob = poly_mod(x, w, k);
    mpz_class p(static_cast<unsigned long>(k.characteristic()));
    for (int d_deg = 1; poly_deg(w) >= 1; ++d_deg) {
        if (d_deg > poly_deg(sqfree) + 1) throw std::logic_error("factor_poly_fp: distinct-degree sweep ran away");
        frob = poly_powmod(frob, p, w, k);
        Poly diff = poly_sub(frob, x, k);
        Poly g = poly_gcd(w, diff, k);
        if (poly_deg(g) >= 1) {
            std::vector<Poly> pieces;
            equal_degree_split(g, d_deg, k, rng, pieces);
            for (Poly& piece : pieces) {
                int mult = 0;
                Poly probe = f;
                for (;;) {
                    auto [quo, rem] = poly_divmod(probe, piece, k);
                    if (!rem.empty()) break;
                    probe = quo;
                    ++mult;
                }
                out.push_back(PolyFactor{piece, mult});
            }
            w = poly_divmod(w, g, k).first;
            frob = poly_mod(frob, w, k);
        }
    }

    std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) { return poly_less(a.factor, b.factor); });
    return out;
}

} // namespace dgper
