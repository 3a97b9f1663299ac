#include "dgper/hom.hpp"

#include <algorithm>

namespace dgper {

ChainMap ChainMap::zero(const DgModule& source, const DgModule& target, int degree) {
    ChainMap f;
    f.source = source;
    f.target = target;
    f.degree = degree;
    return f;
}

ChainMap ChainMap::identity(const DgModule& m) {
    ChainMap f = zero(m, m, 0);
    for (int i = 0; i < m.generator_count(); ++i) {
        const DgGenerator& g = m.generators()[static_cast<std::size_t>(i)];
        f.entries.insert_or_assign({i, i}, m.algebra()->unit_at(g.vertex));
    }
    return f;
}

AlgebraElement ChainMap::entry(int j, int i) const {
    auto it = entries.find({j, i});
    if (it != entries.end()) return it->second;
    int deg = target.generators()[static_cast<std::size_t>(j)].shift -
              source.generators()[static_cast<std::size_t>(i)].shift + degree;
    return source.algebra()->zero_element(deg < 0 ? 0 : deg,
                                          target.generators()[static_cast<std::size_t>(j)].vertex,
                                          source.generators()[static_cast<std::size_t>(i)].vertex);
}

void ChainMap::set_entry(int j, int i, const AlgebraElement& a) {
    if (a.is_zero()) {
        entries.erase({j, i});
        return;
    }
    int want = target.generators()[static_cast<std::size_t>(j)].shift -
               source.generators()[static_cast<std::size_t>(i)].shift + degree;
    if (a.degree() != want || want < 0)
        throw Error(ErrorCode::DegreeMismatch, "chain map entry of wrong degree");
    if (a.left_vertex() != target.generators()[static_cast<std::size_t>(j)].vertex ||
        a.right_vertex() != source.generators()[static_cast<std::size_t>(i)].vertex)
        throw Error(ErrorCode::VertexMismatch, "chain map entry with mismatched vertices");
    entries.insert_or_assign({j, i}, a);
}

ChainMap ChainMap::operator+(const ChainMap& o) const {
    ChainMap out = *this;
    for (const auto& [pos, a] : o.entries) {
        auto it = out.entries.find(pos);
        if (it == out.entries.end()) {
            out.entries.insert({pos, a});
        } else {
            AlgebraElement s = it->second + a;
            if (s.is_zero())
                out.entries.erase(it);
            else
                it->second = s;
        }
    }
    return out;
}

ChainMap ChainMap::operator-(const ChainMap& o) const { return *this + o.scaled(-Scalar::one(source.algebra()->field())); }

ChainMap ChainMap::scaled(const Scalar& c) const {
    ChainMap out = zero(source, target, degree);
    if (c.is_zero()) return out;
    for (const auto& [pos, a] : entries) out.entries.insert_or_assign(pos, a.scaled(c));
    return out;
}

bool ChainMap::operator==(const ChainMap& o) const {
    return degree == o.degree && entries == o.entries && source == o.source && target == o.target;
}

Mat ChainMap::scalar_part() const {
    const Field& k = source.algebra()->field();
    Mat out(k, target.generator_count(), source.generator_count());
    for (const auto& [pos, a] : entries)
        if (a.degree() == 0) out.at(pos.first, pos.second) = a.scalar_part();
    return out;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (!(f.target == g.source)) throw std::logic_error("compose: maps are not composable");
    ChainMap out = ChainMap::zero(f.source, g.target, f.degree + g.degree);
    for (const auto& [gp, ge] : g.entries) {
        for (const auto& [fp, fe] : f.entries) {
            if (gp.second != fp.first) continue;
            AlgebraElement prod = multiply(ge, fe);
            if (prod.is_zero()) continue;
            std::pair<int, int> pos{gp.first, fp.second};
            auto it = out.entries.find(pos);
            if (it == out.entries.end()) {
                out.entries.insert({pos, prod});
            } else {
                AlgebraElement s = it->second + prod;
                if (s.is_zero())
                    out.entries.erase(it);
                else
                    it->second = s;
            }
        }
    }
    return out;
}

ChainMap hom_differential(const ChainMap& f) {
    const DgModule& M = f.source;
    const DgModule& N = f.target;
    ChainMap out = ChainMap::zero(M, N, f.degree + 1);
    const GradedAlgebra& A = *M.algebra();
    bool odd_t = f.degree % 2 != 0;

    auto accumulate = [&out](int j, int i, const AlgebraElement& a) {
        if (a.is_zero()) return;
        std::pair<int, int> pos{j, i};
        auto it = out.entries.find(pos);
        if (it == out.entries.end()) {
            out.entries.insert({pos, a});
        } else {
            AlgebraElement s = it->second + a;
            if (s.is_zero())
                out.entries.erase(it);
            else
                it->second = s;
        }
    };

    // d_N ∘ f
    for (const auto& [np, ne] : N.differential())
        for (const auto& [fp, fe] : f.entries) {
            if (np.second != fp.first) continue;
            accumulate(np.first, fp.second, multiply(ne, fe));
        }
    if (A.has_derivation()) {
        for (const auto& [fp, fe] : f.entries) {
            AlgebraElement da = apply_derivation(fe);
            if (N.generators()[static_cast<std::size_t>(fp.first)].shift % 2 != 0) da = -da;
            accumulate(fp.first, fp.second, da);
        }
    }
    // - (-1)^t f ∘ d_M
    for (const auto& [fp, fe] : f.entries)
        for (const auto& [mp, me] : M.differential()) {
            if (fp.second != mp.first) continue;
            AlgebraElement prod = multiply(fe, me);
            if (!odd_t) prod = -prod;
            accumulate(fp.first, mp.second, prod);
        }
    return out;
}

bool is_chain_map(const ChainMap& f) { return hom_differential(f).is_zero(); }

HomSpace hom_space(const DgModule& m, const DgModule& n, int t) {
    HomSpace out;
    const GradedAlgebra& A = *m.algebra();
    for (int j = 0; j < n.generator_count(); ++j) {
        for (int i = 0; i < m.generator_count(); ++i) {
            int d = n.generators()[static_cast<std::size_t>(j)].shift -
                    m.generators()[static_cast<std::size_t>(i)].shift + t;
            if (d < 0) continue;
            if (d > A.degree_cap())
                throw Error(ErrorCode::CapExceeded,
                            "hom component of degree " + std::to_string(d) + " lives above the cap");
            for (BasisId b :
                 A.component_basis(n.generators()[static_cast<std::size_t>(j)].vertex,
                                   m.generators()[static_cast<std::size_t>(i)].vertex, d))
                out.coords.push_back({j, i, b});
        }
    }
    for (std::size_t p = 0; p < out.coords.size(); ++p) out.index[out.coords[p]] = static_cast<int>(p);
    out.dim = static_cast<int>(out.coords.size());
    return out;
}

std::vector<Scalar> flatten(const HomSpace& space, const ChainMap& f, const Field& k) {
    std::vector<Scalar> v(static_cast<std::size_t>(space.dim), Scalar::zero(k));
    for (const auto& [pos, a] : f.entries)
        for (const auto& [b, c] : a.terms()) {
            auto it = space.index.find({pos.first, pos.second, b});
            if (it == space.index.end()) throw std::logic_error("flatten: coordinate outside the hom space");
            v[static_cast<std::size_t>(it->second)] = c;
        }
    return v;
}

ChainMap unflatten(const HomSpace& space, const DgModule& m, const DgModule& n, int t,
                   const std::vector<Scalar>& v) {
    ChainMap f = ChainMap::zero(m, n, t);
    const GradedAlgebra& A = *m.algebra();
    for (std::size_t p = 0; p < space.coords.size(); ++p) {
        if (v[p].is_zero()) continue;
        auto [j, i, b] = space.coords[p];
        AlgebraElement e = f.entry(j, i);
        e.set_coeff(b, v[p] + e.coeff(b));
        if (e.is_zero())
            f.entries.erase({j, i});
        else
            f.entries.insert_or_assign({j, i}, e);
    }
    (void)A;
    return f;
}

Mat hom_differential_matrix(const DgModule& m, const DgModule& n, int t,
                            const HomSpace& from, const HomSpace& to) {
    const Field& k = m.algebra()->field();
    Mat out(k, to.dim, from.dim);
    for (int c = 0; c < from.dim; ++c) {
        auto [j, i, b] = from.coords[static_cast<std::size_t>(c)];
        ChainMap unit = ChainMap::zero(m, n, t);
        AlgebraElement e = unit.entry(j, i);
        e.set_coeff(b, Scalar::one(k));
        unit.entries.insert_or_assign({j, i}, e);
        ChainMap d = hom_differential(unit);
        // the differential of a unit map is sparse; fill only its support
        for (const auto& [pos, elt] : d.entries)
            for (const auto& [tb, coeff] : elt.terms()) {
                auto it = to.index.find({pos.first, pos.second, tb});
                if (it == to.index.end()) throw std::logic_error("hom_differential_matrix: coordinate missing");
                out.at(it->second, c) = coeff;
            }
    }
    return out;
}

std::vector<ChainMap> chain_maps_basis(const DgModule& m, const DgModule& n, int t) {
    HomSpace from = hom_space(m, n, t);
    HomSpace to = hom_space(m, n, t + 1);
    Mat d = hom_differential_matrix(m, n, t, from, to);
    std::vector<ChainMap> out;
    for (const std::vector<Scalar>& v : kernel_basis(d)) out.push_back(unflatten(from, m, n, t, v));
    return out;
}

HotHom hom_homotopy_classes(const DgModule& m, const DgModule& n) {
    const Field& k = m.algebra()->field();
    HomSpace h_space = hom_space(m, n, -1);
    HomSpace z_space = hom_space(m, n, 0);
    HomSpace b_space = hom_space(m, n, 1);
    Mat d0 = hom_differential_matrix(m, n, 0, z_space, b_space);
    Mat dm1 = hom_differential_matrix(m, n, -1, h_space, z_space);

    HotHom out;
    SpanBuilder span(k, z_space.dim);
    for (int c = 0; c < dm1.cols(); ++c) span.insert(dm1.col(c));
    for (const std::vector<Scalar>& z : kernel_basis(d0)) {
        if (span.insert(z)) {
            out.representatives.push_back(unflatten(z_space, m, n, 0, z));
        }
    }
    out.dim = static_cast<int>(out.representatives.size());
    return out;
}

std::optional<ChainMap> homotopy_between(const ChainMap& f, const ChainMap& g) {
    if (!(f.source == g.source) || !(f.target == g.target) || f.degree != g.degree)
        throw std::logic_error("homotopy_between: maps with different source/target/degree");
    const DgModule& M = f.source;
    const DgModule& N = f.target;
    const Field& k = M.algebra()->field();
    int t = f.degree;
    HomSpace h_space = hom_space(M, N, t - 1);
    HomSpace t_space = hom_space(M, N, t);
    Mat d = hom_differential_matrix(M, N, t - 1, h_space, t_space);
    ChainMap delta = f - g;
    std::vector<Scalar> rhs = flatten(t_space, delta, k);
    Mat b(k, t_space.dim, 1);
    b.set_col(0, rhs);
    std::optional<Mat> x = solve(d, b);
    if (!x) return std::nullopt;
    return unflatten(h_space, M, N, t - 1, x->col(0));
}

bool is_dgmod_iso(const ChainMap& f) {
    if (f.degree != 0) return false;
    // flatness of the target makes "scalar part invertible" equivalent to
    // "isomorphism in dgMod"
    if (!f.target.is_filt())
        throw Error(ErrorCode::NotFiltForm, "isomorphism test needs a Filt-form target");
    if (f.source.generator_count() != f.target.generator_count()) return false;
    Mat bar = f.scalar_part();
    return rank(bar) == f.source.generator_count();
}

std::optional<ChainMap> invert_iso(const ChainMap& f) {
    if (!is_dgmod_iso(f)) return std::nullopt;
    const DgModule& M = f.source;
    const DgModule& N = f.target;
    const Field& k = M.algebra()->field();
    HomSpace g_space = hom_space(N, M, 0);
    HomSpace id_m_space = hom_space(M, M, 0);
    HomSpace id_n_space = hom_space(N, N, 0);
    int rows = id_m_space.dim + id_n_space.dim;
    Mat sys(k, rows, g_space.dim);
    for (int c = 0; c < g_space.dim; ++c) {
        auto [j, i, b] = g_space.coords[static_cast<std::size_t>(c)];
        ChainMap unit = ChainMap::zero(N, M, 0);
        AlgebraElement e = unit.entry(j, i);
        e.set_coeff(b, Scalar::one(k));
        unit.entries.insert_or_assign({j, i}, e);
        std::vector<Scalar> gf = flatten(id_m_space, compose(unit, f), k);
        std::vector<Scalar> fg = flatten(id_n_space, compose(f, unit), k);
        for (int r = 0; r < id_m_space.dim; ++r) sys.at(r, c) = gf[static_cast<std::size_t>(r)];
        for (int r = 0; r < id_n_space.dim; ++r) sys.at(id_m_space.dim + r, c) = fg[static_cast<std::size_t>(r)];
    }
    Mat rhs(k, rows, 1);
    std::vector<Scalar> idm = flatten(id_m_space, ChainMap::identity(M), k);
    std::vector<Scalar> idn = flatten(id_n_space, ChainMap::identity(N), k);
    for (int r = 0; r < id_m_space.dim; ++r) rhs.at(r, 0) = idm[static_cast<std::size_t>(r)];
    for (int r = 0; r < id_n_space.dim; ++r) rhs.at(id_m_space.dim + r, 0) = idn[static_cast<std::size_t>(r)];
    std::optional<Mat> x = solve(sys, rhs);
    if (!x) return std::nullopt;
    return unflatten(g_space, N, M, 0, x->col(0));
}

} // namespace dgper
