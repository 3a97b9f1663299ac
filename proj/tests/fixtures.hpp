#pragma once

#include <random>

#include "dgper/fda.hpp"
#include "dgper/quotient.hpp"
#include "dgper/triang.hpp"

namespace dgper::testing {

/// D(n) = k[x]/x^{n+1} with deg x = 1, one vertex.
inline AlgebraPtr truncated_poly(const Field& k, int n, int cap = -1) {
    if (cap < 0) cap = n + 5; // room for d^2 checks on modules with wide shift spreads
    Relation rel;
    rel.push_back(RelationTerm{Scalar::one(k), std::vector<std::string>(static_cast<std::size_t>(n) + 1, "x")});
    return build_quotient_algebra(k, {"v"}, {Arrow{"x", 1, "v", "v"}}, {rel}, cap);
}

/// SS = k x k, two vertices, nothing in positive degrees.
inline AlgebraPtr semisimple_pair(const Field& k, int cap = 4) {
    return build_quotient_algebra(k, {"x", "y"}, {}, {}, cap);
}

/// RAD2: two vertices with a single degree-1 arrow between them.
inline AlgebraPtr rad2(const Field& k, int cap = 5) {
    return build_quotient_algebra(k, {"u", "w"}, {Arrow{"a", 1, "u", "w"}}, {}, cap);
}

/// k[X, Y], commuting degree-1 generators, capped.
inline AlgebraPtr poly_xy(const Field& k, int cap) {
    Relation comm;
    comm.push_back(RelationTerm{Scalar::one(k), {"X", "Y"}});
    comm.push_back(RelationTerm{-Scalar::one(k), {"Y", "X"}});
    return build_quotient_algebra(k, {"v"}, {Arrow{"X", 1, "v", "v"}, Arrow{"Y", 1, "v", "v"}}, {comm}, cap);
}

/// k[X] capped (a window into the free polynomial ring on one generator).
inline AlgebraPtr poly_x(const Field& k, int cap) {
    return build_quotient_algebra(k, {"v"}, {Arrow{"X", 1, "v", "v"}}, {}, cap);
}

/// Two-arrow loop algebra with both composites zero: e, a, b, a^2, b^2.
inline AlgebraPtr loop2(const Field& k, int cap = 4) {
    Relation ab, ba;
    ab.push_back(RelationTerm{Scalar::one(k), {"a", "b"}});
    ba.push_back(RelationTerm{Scalar::one(k), {"b", "a"}});
    return build_quotient_algebra(k, {"v"}, {Arrow{"a", 1, "v", "v"}, Arrow{"b", 1, "v", "v"}}, {ab, ba}, cap);
}

/// A dg algebra with nonzero differential: basis e, x (deg 1), y (deg 2),
/// x*x = y, x*y = y*x = 0, d(x) = y.
inline AlgebraPtr dg_with_derivation(const Field& k) {
    GradedAlgebraData data;
    data.field = k;
    data.vertices = {"v"};
    data.degree_cap = 5;
    data.basis = {BasisElem{"e", 0, 0, 0}, BasisElem{"x", 1, 0, 0}, BasisElem{"y", 2, 0, 0}};
    Scalar one = Scalar::one(k);
    data.products[{0, 0}] = {{0, one}};
    data.products[{0, 1}] = {{1, one}};
    data.products[{0, 2}] = {{2, one}};
    data.products[{1, 0}] = {{1, one}};
    data.products[{2, 0}] = {{2, one}};
    data.products[{1, 1}] = {{2, one}};
    data.products[{1, 2}] = {};
    data.products[{2, 1}] = {};
    data.products[{2, 2}] = {};
    std::map<BasisId, TermList> der;
    der[1] = {{2, one}};
    data.derivation = std::move(der);
    return GradedAlgebra::validate(std::move(data));
}

/// The running two-generator module over D(n): generators (0,v), (0,v),
/// differential (0 x; 0 0).
inline DgModule two_step_module(const AlgebraPtr& dn) {
    AlgebraElement x = dn->basis_element(*dn->basis_id("x"));
    ElementMatrix diff;
    diff.insert({{0, 1}, x});
    return DgModule::validate(dn, {DgGenerator{0, 0}, DgGenerator{0, 0}}, std::move(diff));
}

/// Random element of the kernel of d : M^{1-l} -> M^{2-l} restricted as a
/// fresh generator column, used to grow random Filt modules by extensions.
inline DgModule random_extension(const DgModule& m, VertexId x, int shift, std::mt19937_64& rng) {
    const GradedAlgebra& A = *m.algebra();
    const Field& k = A.field();
    int n = m.generator_count();

    std::vector<DgGenerator> gens = m.generators();
    gens.push_back(DgGenerator{shift, x});
    ElementMatrix diff = m.differential();

    // candidate column entries a_{j, new} in e_{x_j} A^{l_j - shift + 1} e_x;
    // d^2 = 0 needs sum_j a_{kj} a_{j,new} = 0, i.e. the column is a cycle
    struct Slot {
        int row;
        BasisId basis;
    };
    std::vector<Slot> slots;
    for (int j = 0; j < n; ++j) {
        int deg = m.generators()[static_cast<std::size_t>(j)].shift - shift + 1;
        if (deg < 0 || deg > A.degree_cap()) continue;
        for (BasisId b : A.component_basis(m.generators()[static_cast<std::size_t>(j)].vertex, x, deg))
            slots.push_back(Slot{j, b});
    }
    if (!slots.empty()) {
        // cycle condition rows: coordinates of sum_j a_{kj} a_{j,new}
        std::vector<std::pair<int, BasisId>> rows;
        std::map<std::pair<int, BasisId>, int> row_index;
        auto row_of = [&](int kk, BasisId b) {
            auto it = row_index.find({kk, b});
            if (it != row_index.end()) return it->second;
            int idx = static_cast<int>(rows.size());
            row_index[{kk, b}] = idx;
            rows.push_back({kk, b});
            return idx;
        };
        std::vector<std::map<int, Scalar>> cols(slots.size());
        for (std::size_t c = 0; c < slots.size(); ++c) {
            AlgebraElement eb = A.basis_element(slots[c].basis);
            auto add = [&cols, c](int row, const Scalar& v) {
                auto [it, fresh] = cols[c].insert({row, v});
                if (!fresh) it->second = it->second + v;
            };
            for (int kk = 0; kk < n; ++kk) {
                auto it = m.differential().find({kk, slots[c].row});
                if (it == m.differential().end()) continue;
                AlgebraElement prod = multiply(it->second, eb);
                for (const auto& [t, coeff] : prod.terms()) add(row_of(kk, t), coeff);
            }
            if (A.has_derivation()) {
                AlgebraElement db = apply_derivation(eb);
                if (m.generators()[static_cast<std::size_t>(slots[c].row)].shift % 2 != 0) db = -db;
                for (const auto& [t, coeff] : db.terms()) add(row_of(slots[c].row, t), coeff);
            }
        }
        Mat sys(k, static_cast<int>(rows.size()), static_cast<int>(slots.size()));
        for (std::size_t c = 0; c < slots.size(); ++c)
            for (const auto& [r, coeff] : cols[c]) sys.at(r, static_cast<int>(c)) = coeff;
        std::vector<std::vector<Scalar>> cycles = kernel_basis(sys);
        if (!cycles.empty()) {
            // random combination of cycle columns
            std::vector<Scalar> column(slots.size(), Scalar::zero(k));
            for (const std::vector<Scalar>& z : cycles) {
                long long c;
                if (k.is_prime_field()) {
                    std::uniform_int_distribution<long long> dist(0, static_cast<long long>(k.characteristic()) - 1);
                    c = dist(rng);
                } else {
                    std::uniform_int_distribution<long long> dist(-2, 2);
                    c = dist(rng);
                }
                if (c == 0) continue;
                Scalar sc = Scalar::from_int(k, c);
                for (std::size_t i = 0; i < slots.size(); ++i) column[i] = column[i] + z[i] * sc;
            }
            std::map<int, AlgebraElement> per_row;
            for (std::size_t i = 0; i < slots.size(); ++i) {
                if (column[i].is_zero()) continue;
                auto it = per_row.find(slots[i].row);
                if (it == per_row.end()) {
                    int deg = m.generators()[static_cast<std::size_t>(slots[i].row)].shift - shift + 1;
                    AlgebraElement elt = A.zero_element(deg, m.generators()[static_cast<std::size_t>(slots[i].row)].vertex, x);
                    elt.set_coeff(slots[i].basis, column[i]);
                    per_row.emplace(slots[i].row, elt);
                } else {
                    it->second.set_coeff(slots[i].basis, it->second.coeff(slots[i].basis) + column[i]);
                }
            }
            for (const auto& [j, elt] : per_row)
                if (!elt.is_zero()) diff.insert_or_assign({j, n}, elt);
        }
    }
    return DgModule::validate(m.algebra(), std::move(gens), std::move(diff));
}

/// Random Filt module with `size` generators: iterated extensions with
/// weakly decreasing shifts.
inline DgModule random_filt_module(const AlgebraPtr& alg, int size, std::mt19937_64& rng,
                                   int top_shift = 2, bool flag_only = false) {
    std::uniform_int_distribution<int> vdist(0, alg->vertex_count() - 1);
    std::uniform_int_distribution<int> drop(0, 2);
    int shift = flag_only ? 0 : top_shift;
    int floor = top_shift - 2; // keep the shift spread inside the cap window
    DgModule m = generator_module(alg, static_cast<VertexId>(vdist(rng)), shift);
    for (int i = 1; i < size; ++i) {
        if (!flag_only && shift > floor && drop(rng) == 0) shift -= 1;
        m = random_extension(m, static_cast<VertexId>(vdist(rng)), shift, rng);
    }
    return m;
}

/// Random degree-0 chain map drawn from the solved chain map space.
inline ChainMap random_chain_map(const DgModule& x, const DgModule& y, std::mt19937_64& rng) {
    const Field& k = x.algebra()->field();
    std::vector<ChainMap> basis = chain_maps_basis(x, y, 0);
    ChainMap f = ChainMap::zero(x, y, 0);
    for (const ChainMap& b : basis) {
        long long c;
        if (k.is_prime_field()) {
            std::uniform_int_distribution<long long> dist(0, static_cast<long long>(k.characteristic()) - 1);
            c = dist(rng);
        } else {
            std::uniform_int_distribution<long long> dist(-2, 2);
            c = dist(rng);
        }
        if (c == 0) continue;
        f = f + b.scaled(Scalar::from_int(k, c));
    }
    return f;
}

} // namespace dgper::testing
