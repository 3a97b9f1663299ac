#include "dgper/heart.hpp"

#include <algorithm>

namespace dgper {

namespace {

void require_flag(const DgModule& m, const char* what) {
    if (!is_flag_module(m))
        throw Error(ErrorCode::NotDgFlag, std::string(what) + " needs a dgFlag object (Filt, all shifts 0)");
}

/// Rows (generator j, degree-1 basis b with left(b) = x_j) of the scalar
/// system whose kernel is Z^0(M): columns are generators, the column of g_i
/// holds the coefficients of a_{ji}.
struct ActionSystem {
    std::vector<std::pair<int, BasisId>> rows;
    Mat mat;
};

ActionSystem scalar_action_system(const DgModule& m) {
    const GradedAlgebra& A = *m.algebra();
    const Field& k = A.field();
    std::vector<std::pair<int, BasisId>> rows;
    std::map<std::pair<int, BasisId>, int> index;
    for (int j = 0; j < m.generator_count(); ++j) {
        VertexId xj = m.generators()[static_cast<std::size_t>(j)].vertex;
        for (VertexId y = 0; y < A.vertex_count(); ++y)
            for (BasisId b : A.component_basis(xj, y, 1)) {
                index[{j, b}] = static_cast<int>(rows.size());
                rows.push_back({j, b});
            }
    }
    Mat mat(k, static_cast<int>(rows.size()), m.generator_count());
    for (const auto& [pos, a] : m.differential())
        for (const auto& [b, c] : a.terms()) mat.at(index.at({pos.first, b}), pos.second) = c;
    return ActionSystem{std::move(rows), std::move(mat)};
}

VertexId vector_vertex(const DgModule& m, const std::vector<Scalar>& v) {
    VertexId out = -1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        VertexId x = m.generators()[i].vertex;
        if (out != -1 && out != x) throw std::logic_error("vertex-mixed generator vector");
        out = x;
    }
    return out;
}

/// Submodule of a flag module spanned by vertex-pure scalar generator
/// vectors whose span is closed under the differential. The presentation is
/// normalized to Filt form.
SubmoduleResult submodule_from_vectors(const DgModule& m, const std::vector<std::vector<Scalar>>& vectors) {
    const GradedAlgebra& A = *m.algebra();
    const Field& k = A.field();
    int n = m.generator_count();
    int s = static_cast<int>(vectors.size());

    std::vector<DgGenerator> gens;
    for (const std::vector<Scalar>& v : vectors) {
        VertexId x = vector_vertex(m, v);
        if (x == -1) throw std::logic_error("zero vector passed as submodule generator");
        gens.push_back(DgGenerator{0, x});
    }

    ActionSystem act = scalar_action_system(m);
    // d(v_t) in M^1 coordinates
    Mat dvals(k, act.mat.rows(), s);
    for (int c = 0; c < s; ++c) {
        Mat col(k, n, 1);
        col.set_col(0, vectors[static_cast<std::size_t>(c)]);
        Mat dv = act.mat * col;
        dvals.set_col(c, dv.col(0));
    }

    // multiplication map (t, beta in e_{x_t} A^1 e_*) -> M^1 coordinates
    std::vector<std::pair<int, BasisId>> cols;
    for (int t = 0; t < s; ++t)
        for (VertexId y = 0; y < A.vertex_count(); ++y)
            for (BasisId b : A.component_basis(gens[static_cast<std::size_t>(t)].vertex, y, 1))
                cols.push_back({t, b});
    Mat mult(k, act.mat.rows(), static_cast<int>(cols.size()));
    std::map<std::pair<int, BasisId>, int> row_index;
    for (std::size_t r = 0; r < act.rows.size(); ++r) row_index[act.rows[r]] = static_cast<int>(r);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        auto [t, b] = cols[c];
        for (int i = 0; i < n; ++i) {
            const Scalar& coeff = vectors[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)];
            if (coeff.is_zero()) continue;
            mult.at(row_index.at({i, b}), static_cast<int>(c)) = coeff;
        }
    }
    std::optional<Mat> sol = solve(mult, dvals);
    if (!sol) throw std::logic_error("submodule_from_vectors: span is not closed under d");

    ElementMatrix diff;
    for (int c = 0; c < s; ++c)
        for (std::size_t cc = 0; cc < cols.size(); ++cc) {
            const Scalar& coeff = sol->at(static_cast<int>(cc), c);
            if (coeff.is_zero()) continue;
            auto [t, b] = cols[cc];
            std::pair<int, int> pos{t, c};
            auto it = diff.find(pos);
            if (it == diff.end()) {
                AlgebraElement elt = A.zero_element(1, gens[static_cast<std::size_t>(t)].vertex,
                                                    gens[static_cast<std::size_t>(c)].vertex);
                elt.set_coeff(b, coeff);
                diff.emplace(pos, elt);
            } else {
                it->second.set_coeff(b, it->second.coeff(b) + coeff);
            }
        }
    DgModule raw = DgModule::validate(m.algebra(), gens, std::move(diff));

    ChainMap incl = ChainMap::zero(raw, m, 0);
    for (int c = 0; c < s; ++c)
        for (int i = 0; i < n; ++i) {
            const Scalar& coeff = vectors[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
            if (!coeff.is_zero())
                incl.set_entry(i, c, A.unit_at(m.generators()[static_cast<std::size_t>(i)].vertex).scaled(coeff));
        }

    FiltNormalization norm = filt_normalize(raw);
    return SubmoduleResult{norm.result, compose(incl, norm.iso_inverse)};
}

struct RawQuotient {
    DgModule module;       // representatives = non-pivot generators, unnormalized
    ChainMap projection;   // ambient -> module
    std::vector<int> reps; // ambient generator index per quotient generator
};

/// Quotient of a flag module by the span of vertex-pure vectors (closed
/// under the differential): representatives are the non-pivot generators.
RawQuotient raw_quotient_by_vectors(const DgModule& m, const std::vector<std::vector<Scalar>>& vectors) {
    const GradedAlgebra& A = *m.algebra();
    const Field& k = A.field();
    int n = m.generator_count();

    Mat span(k, static_cast<int>(vectors.size()), n);
    for (std::size_t r = 0; r < vectors.size(); ++r)
        for (int c = 0; c < n; ++c) span.at(static_cast<int>(r), c) = vectors[r][static_cast<std::size_t>(c)];
    RrefResult rr = rref(span);

    std::vector<int> reps; // non-pivot generators survive
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    std::vector<int> pivot_row(static_cast<std::size_t>(n), -1);
    for (int r = 0; r < rr.rank; ++r) {
        is_pivot[static_cast<std::size_t>(rr.pivot_cols[static_cast<std::size_t>(r)])] = true;
        pivot_row[static_cast<std::size_t>(rr.pivot_cols[static_cast<std::size_t>(r)])] = r;
    }
    std::vector<int> rep_index(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i)
        if (!is_pivot[static_cast<std::size_t>(i)]) {
            rep_index[static_cast<std::size_t>(i)] = static_cast<int>(reps.size());
            reps.push_back(i);
        }

    std::vector<DgGenerator> gens;
    for (int i : reps) gens.push_back(m.generators()[static_cast<std::size_t>(i)]);

    // class of g_j in the quotient, as scalar coordinates over reps
    auto class_of = [&](int j) {
        std::vector<Scalar> out(reps.size(), Scalar::zero(k));
        if (!is_pivot[static_cast<std::size_t>(j)]) {
            out[static_cast<std::size_t>(rep_index[static_cast<std::size_t>(j)])] = Scalar::one(k);
        } else {
            int r = pivot_row[static_cast<std::size_t>(j)];
            for (std::size_t q = 0; q < reps.size(); ++q)
                out[q] = -rr.reduced.at(r, reps[q]);
        }
        return out;
    };

    ElementMatrix diff;
    for (std::size_t c = 0; c < reps.size(); ++c) {
        int i = reps[c];
        for (int j = 0; j < n; ++j) {
            auto it = m.differential().find({j, i});
            if (it == m.differential().end()) continue;
            std::vector<Scalar> cls = class_of(j);
            for (std::size_t q = 0; q < reps.size(); ++q) {
                if (cls[q].is_zero()) continue;
                std::pair<int, int> pos{static_cast<int>(q), static_cast<int>(c)};
                AlgebraElement term = it->second.scaled(cls[q]);
                auto dit = diff.find(pos);
                if (dit == diff.end()) {
                    diff.emplace(pos, term);
                } else {
                    AlgebraElement sum = dit->second + term;
                    if (sum.is_zero())
                        diff.erase(dit);
                    else
                        dit->second = sum;
                }
            }
        }
    }
    DgModule raw = DgModule::validate(m.algebra(), gens, std::move(diff));

    ChainMap proj = ChainMap::zero(m, raw, 0);
    for (int j = 0; j < n; ++j) {
        std::vector<Scalar> cls = class_of(j);
        for (std::size_t q = 0; q < reps.size(); ++q)
            if (!cls[q].is_zero())
                proj.set_entry(static_cast<int>(q), j,
                               A.unit_at(gens[q].vertex).scaled(cls[q]));
    }
    return RawQuotient{std::move(raw), std::move(proj), std::move(reps)};
}

QuotientResult quotient_by_vectors(const DgModule& m, const std::vector<std::vector<Scalar>>& vectors) {
    RawQuotient raw = raw_quotient_by_vectors(m, vectors);
    FiltNormalization norm = filt_normalize(raw.module);
    return QuotientResult{norm.result, compose(norm.iso, raw.projection)};
}

std::vector<std::vector<Scalar>> image_span(const ChainMap& f) {
    Mat bar = f.scalar_part();
    return row_space_basis(bar.transposed());
}

} // namespace

bool is_flag_module(const DgModule& m) { return m.is_flag(); }

SubmoduleResult heart_kernel(const ChainMap& f) {
    require_flag(f.source, "heart_kernel");
    require_flag(f.target, "heart_kernel");
    if (f.degree != 0) throw Error(ErrorCode::NotDgFlag, "heart morphisms have degree 0");
    if (!is_chain_map(f)) throw Error(ErrorCode::ValidationError, "heart_kernel: the map is not a chain map");
    std::vector<std::vector<Scalar>> ker = kernel_basis(f.scalar_part());
    if (ker.empty()) {
        DgModule zero = DgModule::validate(f.source.algebra(), {}, {});
        return SubmoduleResult{zero, ChainMap::zero(zero, f.source, 0)};
    }
    return submodule_from_vectors(f.source, ker);
}

SubmoduleResult heart_image(const ChainMap& f) {
    require_flag(f.source, "heart_image");
    require_flag(f.target, "heart_image");
    if (f.degree != 0) throw Error(ErrorCode::NotDgFlag, "heart morphisms have degree 0");
    if (!is_chain_map(f)) throw Error(ErrorCode::ValidationError, "heart_image: the map is not a chain map");
    std::vector<std::vector<Scalar>> img = image_span(f);
    if (img.empty()) {
        DgModule zero = DgModule::validate(f.target.algebra(), {}, {});
        return SubmoduleResult{zero, ChainMap::zero(zero, f.target, 0)};
    }
    return submodule_from_vectors(f.target, img);
}

QuotientResult heart_cokernel(const ChainMap& f) {
    require_flag(f.source, "heart_cokernel");
    require_flag(f.target, "heart_cokernel");
    if (f.degree != 0) throw Error(ErrorCode::NotDgFlag, "heart morphisms have degree 0");
    if (!is_chain_map(f)) throw Error(ErrorCode::ValidationError, "heart_cokernel: the map is not a chain map");
    return quotient_by_vectors(f.target, image_span(f));
}

SocleFiltration socle_filtration(const DgModule& m) {
    require_flag(m, "socle_filtration");
    const Field& k = m.algebra()->field();
    SocleFiltration out;
    if (m.is_zero()) return out;

    DgModule current = m;
    // lift: columns map current generators to M generator coordinates
    Mat lift = Mat::identity(k, m.generator_count());
    std::vector<std::vector<Scalar>> accumulated;

    while (!current.is_zero()) {
        ActionSystem act = scalar_action_system(current);
        std::vector<std::vector<Scalar>> z = kernel_basis(act.mat);
        if (z.empty())
            throw Error(ErrorCode::NotFilterable, "flag module with zero socle layer");

        std::map<VertexId, int> mult;
        std::vector<std::vector<Scalar>> lifted;
        for (const std::vector<Scalar>& v : z) {
            Mat col(k, current.generator_count(), 1);
            col.set_col(0, v);
            Mat in_m = lift * col;
            lifted.push_back(in_m.col(0));
            mult[vector_vertex(m, lifted.back())] += 1;
        }
        out.layer_multiplicities.push_back(std::move(mult));
        out.layer_vectors.push_back(lifted);
        for (const std::vector<Scalar>& v : lifted) accumulated.push_back(v);

        SubmoduleResult soc = submodule_from_vectors(m, accumulated);
        out.socles.push_back(soc.module);
        out.inclusions.push_back(soc.inclusion);

        RawQuotient q = raw_quotient_by_vectors(current, z);
        Mat next_lift(k, m.generator_count(), q.module.generator_count());
        for (int c = 0; c < q.module.generator_count(); ++c)
            next_lift.set_col(c, lift.col(q.reps[static_cast<std::size_t>(c)]));
        lift = std::move(next_lift);
        current = std::move(q.module);
    }

    if (out.socles.empty() || out.socles.back().generator_count() != m.generator_count())
        throw Error(ErrorCode::VerificationFailed, "socle filtration does not exhaust the module");
    return out;
}

std::map<VertexId, int> jh_multiplicities(const DgModule& m) {
    require_flag(m, "jh_multiplicities");
    std::map<VertexId, int> out;
    for (const DgGenerator& g : m.generators()) out[g.vertex] += 1;
    return out;
}

bool is_injective_heart(const DgModule& m) {
    require_flag(m, "is_injective_heart");
    return cohomology(m, 1).dim == 0;
}

HeartHomModule heart_hom_module(const DgModule& n, const DgModule& i) {
    require_flag(n, "heart_hom_module");
    require_flag(i, "heart_hom_module");
    if (!is_injective_heart(i)) throw Error(ErrorCode::NotInjective, "I has nonzero H^1, so it is not injective");

    const GradedAlgebra& A = *i.algebra();
    const Field& k = A.field();
    // every simple must embed: a chain map L̂_x -> I with nonzero scalar part
    for (VertexId x = 0; x < A.vertex_count(); ++x) {
        DgModule simple = generator_module(i.algebra(), x, 0);
        std::vector<ChainMap> maps = chain_maps_basis(simple, i, 0);
        bool found = false;
        for (const ChainMap& f : maps)
            if (!f.scalar_part().is_zero()) { found = true; break; }
        if (!found)
            throw Error(ErrorCode::MissingSimple, "no monomorphism from the simple at vertex '" + A.vertex_name(x) + "'");
    }

    HeartHomModule out;
    out.end = end_algebra(i);
    out.hom_basis = chain_maps_basis(n, i, 0);
    out.dim = static_cast<int>(out.hom_basis.size());

    HomSpace space = hom_space(n, i, 0);
    Mat basis_mat(k, space.dim, out.dim);
    for (int c = 0; c < out.dim; ++c) basis_mat.set_col(c, flatten(space, out.hom_basis[static_cast<std::size_t>(c)], k));

    for (int a = 0; a < out.end.algebra.dim(); ++a) {
        Mat rhs(k, space.dim, out.dim);
        for (int b = 0; b < out.dim; ++b) {
            ChainMap prod = compose(out.end.basis_maps[static_cast<std::size_t>(a)], out.hom_basis[static_cast<std::size_t>(b)]);
            rhs.set_col(b, flatten(space, prod, k));
        }
        std::optional<Mat> coords = solve(basis_mat, rhs);
        if (!coords) throw std::logic_error("heart_hom_module: action left the hom space");
        out.action.push_back(*coords);
    }
    return out;
}

} // namespace dgper
