#include "dgper/triang.hpp"

#include <algorithm>
#include <numeric>

namespace dgper {

namespace {

void require_filt(const DgModule& m, const char* what) {
    if (!m.is_filt())
        throw Error(ErrorCode::NotFiltForm, std::string(what) + " requires a module in Filt form");
}

/// Change of basis g'_i = sum_j g_j U_{ji} with U invertible scalar and
/// type-preserving; the differential becomes U^{-1} D U. Returns the new
/// module plus the isomorphisms in both directions.
struct BasisChange {
    DgModule result;
    ChainMap to_result;   // input -> result, matrix U^{-1}
    ChainMap from_result; // result -> input, matrix U
};

BasisChange change_basis(const DgModule& m, const Mat& u, const std::vector<DgGenerator>& new_gens) {
    const GradedAlgebra& A = *m.algebra();
    std::optional<Mat> uinv = inverse(u);
    if (!uinv) throw std::logic_error("change_basis: singular matrix");
    int n = m.generator_count();

    // D' = U^{-1} D U, computed entrywise over algebra elements
    ElementMatrix diff;
    for (int q = 0; q < n; ++q) {
        for (int p = 0; p < n; ++p) {
            int deg = new_gens[static_cast<std::size_t>(q)].shift - new_gens[static_cast<std::size_t>(p)].shift + 1;
            if (deg < 0) continue;
            AlgebraElement acc = A.zero_element(deg, new_gens[static_cast<std::size_t>(q)].vertex,
                                                new_gens[static_cast<std::size_t>(p)].vertex);
            for (const auto& [pos, a] : m.differential()) {
                auto [k, j] = pos;
                Scalar lc = uinv->at(q, k);
                Scalar rc = u.at(j, p);
                if (lc.is_zero() || rc.is_zero()) continue;
                acc = acc + a.scaled(lc * rc);
            }
            if (!acc.is_zero()) diff.insert_or_assign({q, p}, acc);
        }
    }
    BasisChange out{DgModule::validate(m.algebra(), new_gens, std::move(diff)), ChainMap(), ChainMap()};

    out.to_result = ChainMap::zero(m, out.result, 0);
    out.from_result = ChainMap::zero(out.result, m, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!uinv->at(i, j).is_zero())
                out.to_result.set_entry(i, j, A.unit_at(m.generators()[static_cast<std::size_t>(j)].vertex)
                                                 .scaled(uinv->at(i, j)));
            if (!u.at(i, j).is_zero())
                out.from_result.set_entry(i, j, A.unit_at(new_gens[static_cast<std::size_t>(j)].vertex)
                                                   .scaled(u.at(i, j)));
        }
    return out;
}

} // namespace

DgModule cone(const ChainMap& f) {
    if (f.degree != 0) throw std::logic_error("cone of a map of nonzero degree");
    if (!is_chain_map(f)) throw Error(ErrorCode::ValidationError, "cone input is not a chain map");
    const DgModule& X = f.source;
    const DgModule& Y = f.target;
    int ny = Y.generator_count();
    std::vector<DgGenerator> gens = Y.generators();
    for (const DgGenerator& g : X.generators()) gens.push_back(DgGenerator{g.shift + 1, g.vertex});
    ElementMatrix diff = Y.differential();
    for (const auto& [pos, a] : f.entries) diff.insert_or_assign({pos.first, ny + pos.second}, a);
    for (const auto& [pos, a] : X.differential()) diff.insert_or_assign({ny + pos.first, ny + pos.second}, -a);
    return DgModule::validate(Y.algebra(), std::move(gens), std::move(diff));
}

MinimizationTrace minimize(const DgModule& m) {
    MinimizationTrace trace;
    trace.result = m;
    trace.forward = ChainMap::identity(m);
    trace.backward = ChainMap::identity(m);

    for (;;) {
        const DgModule& cur = trace.result;
        int n = cur.generator_count();
        int pj = -1, pi = -1;
        Scalar lambda = Scalar::zero(m.algebra()->field());
        for (int j = 0; j < n && pj < 0; ++j)
            for (int i = 0; i < n; ++i) {
                auto it = cur.differential().find({j, i});
                if (it == cur.differential().end() || it->second.degree() != 0) continue;
                Scalar s = it->second.scalar_part();
                if (!s.is_zero()) {
                    pj = j;
                    pi = i;
                    lambda = s;
                    break;
                }
            }
        if (pj < 0) break;

        const GradedAlgebra& A = *cur.algebra();
        Scalar linv = lambda.inverse();
        std::vector<int> keep;
        for (int q = 0; q < n; ++q)
            if (q != pi && q != pj) keep.push_back(q);
        std::vector<int> newpos(static_cast<std::size_t>(n), -1);
        for (std::size_t p = 0; p < keep.size(); ++p) newpos[static_cast<std::size_t>(keep[p])] = static_cast<int>(p);

        std::vector<DgGenerator> gens;
        gens.reserve(keep.size());
        for (int q : keep) gens.push_back(cur.generators()[static_cast<std::size_t>(q)]);

        // a'_{qp} = a_{qp} - a_{qi} λ^{-1} a_{jp}
        ElementMatrix diff;
        for (const auto& [pos, a] : cur.differential()) {
            auto [q, p] = pos;
            if (newpos[static_cast<std::size_t>(q)] < 0 || newpos[static_cast<std::size_t>(p)] < 0) continue;
            diff.insert_or_assign({newpos[static_cast<std::size_t>(q)], newpos[static_cast<std::size_t>(p)]}, a);
        }
        for (int q : keep) {
            auto qi = cur.differential().find({q, pi});
            if (qi == cur.differential().end()) continue;
            for (int p : keep) {
                auto jp = cur.differential().find({pj, p});
                if (jp == cur.differential().end()) continue;
                AlgebraElement corr = multiply(qi->second, jp->second).scaled(linv);
                if (corr.is_zero()) continue;
                std::pair<int, int> np{newpos[static_cast<std::size_t>(q)], newpos[static_cast<std::size_t>(p)]};
                auto it = diff.find(np);
                if (it == diff.end()) {
                    diff.insert({np, -corr});
                } else {
                    AlgebraElement s = it->second - corr;
                    if (s.is_zero())
                        diff.erase(it);
                    else
                        it->second = s;
                }
            }
        }
        DgModule next = DgModule::validate(cur.algebra(), std::move(gens), std::move(diff));

        // projection π: g_p -> g'_p, g_j -> -Σ_q g'_q λ^{-1} a_{qi}, g_i -> 0
        ChainMap proj = ChainMap::zero(cur, next, 0);
        for (int q : keep)
            proj.set_entry(newpos[static_cast<std::size_t>(q)], q,
                           A.unit_at(cur.generators()[static_cast<std::size_t>(q)].vertex));
        for (int q : keep) {
            auto qi = cur.differential().find({q, pi});
            if (qi == cur.differential().end()) continue;
            proj.set_entry(newpos[static_cast<std::size_t>(q)], pj, (-qi->second).scaled(linv));
        }
        // inclusion ι: g'_p -> g_p - g_i λ^{-1} a_{jp}
        ChainMap incl = ChainMap::zero(next, cur, 0);
        for (int q : keep)
            incl.set_entry(q, newpos[static_cast<std::size_t>(q)],
                           A.unit_at(cur.generators()[static_cast<std::size_t>(q)].vertex));
        for (int p : keep) {
            auto jp = cur.differential().find({pj, p});
            if (jp == cur.differential().end()) continue;
            incl.set_entry(pi, newpos[static_cast<std::size_t>(p)], (-jp->second).scaled(linv));
        }

        trace.log.push_back(Elimination{pj, pi});
        trace.forward = compose(proj, trace.forward);
        trace.backward = compose(trace.backward, incl);
        trace.result = std::move(next);
        trace.forward.target = trace.result;
        trace.backward.source = trace.result;
    }
    return trace;
}

FiltNormalization filt_normalize(const DgModule& m) {
    for (const auto& [pos, a] : m.differential())
        if (a.degree() == 0)
            throw Error(ErrorCode::NotFilterable,
                        "differential has scalar entries; minimize before normalizing");
    const GradedAlgebra& A = *m.algebra();
    const Field& k = A.field();
    int n = m.generator_count();

    // stable sort by shift descending
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&m](int p, int q) {
        return m.generators()[static_cast<std::size_t>(p)].shift > m.generators()[static_cast<std::size_t>(q)].shift;
    });
    Mat perm(k, n, n);
    std::vector<DgGenerator> sorted;
    for (int c = 0; c < n; ++c) {
        perm.at(order[static_cast<std::size_t>(c)], c) = Scalar::one(k);
        sorted.push_back(m.generators()[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])]);
    }
    BasisChange sortstep = change_basis(m, perm, sorted);

    FiltNormalization out;
    out.result = sortstep.result;
    out.iso = sortstep.to_result;
    out.iso_inverse = sortstep.from_result;

    // triangularize each equal-shift block by iterated kernel extraction
    int start = 0;
    while (start < n) {
        int stop = start;
        int shift = out.result.generators()[static_cast<std::size_t>(start)].shift;
        while (stop < n && out.result.generators()[static_cast<std::size_t>(stop)].shift == shift) ++stop;
        std::vector<std::vector<int>> block_layers;

        int done = start; // generators in [start, done) already layered
        while (done < stop) {
            const DgModule& cur = out.result;
            std::vector<int> remaining;
            for (int i = done; i < stop; ++i) remaining.push_back(i);

            // scalar system: sum_i coeff_beta(a_{ji}) c_i = 0 over remaining rows j
            std::vector<std::pair<int, BasisId>> eq_rows; // (row j, degree-1 basis id)
            std::map<std::pair<int, BasisId>, int> eq_index;
            for (int j : remaining) {
                VertexId xj = cur.generators()[static_cast<std::size_t>(j)].vertex;
                for (VertexId y = 0; y < A.vertex_count(); ++y)
                    for (BasisId b : A.component_basis(xj, y, 1)) {
                        eq_index[{j, b}] = static_cast<int>(eq_rows.size());
                        eq_rows.push_back({j, b});
                    }
            }
            Mat sys(k, static_cast<int>(eq_rows.size()), static_cast<int>(remaining.size()));
            for (std::size_t c = 0; c < remaining.size(); ++c) {
                int i = remaining[c];
                for (int j : remaining) {
                    auto it = cur.differential().find({j, i});
                    if (it == cur.differential().end()) continue;
                    for (const auto& [b, coeff] : it->second.terms())
                        sys.at(eq_index.at({j, b}), static_cast<int>(c)) = coeff;
                }
            }
            std::vector<std::vector<Scalar>> layer = kernel_basis(sys);
            if (layer.empty())
                throw Error(ErrorCode::NotFilterable,
                            "equal-shift block admits no kernel layer; the module is not filtrable");

            // build the block change of basis: layer vectors first, then a
            // deterministic completion by unit vectors
            int r = static_cast<int>(remaining.size());
            SpanBuilder span(k, r);
            std::vector<std::vector<Scalar>> cols;
            for (const std::vector<Scalar>& v : layer) {
                span.insert(v);
                cols.push_back(v);
            }
            for (int i = 0; i < r && static_cast<int>(cols.size()) < r; ++i) {
                std::vector<Scalar> unit(static_cast<std::size_t>(r), Scalar::zero(k));
                unit[static_cast<std::size_t>(i)] = Scalar::one(k);
                if (span.insert(unit)) cols.push_back(unit);
            }

            // remaining is the contiguous range [done, stop); rebuild that
            // square of the identity with the new column vectors
            Mat u = Mat::identity(k, n);
            std::vector<DgGenerator> gens = cur.generators();
            for (int c = 0; c < r; ++c) {
                VertexId v = -1;
                for (int row = 0; row < r; ++row) {
                    const Scalar& coeff = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(row)];
                    u.at(done + row, done + c) = coeff;
                    if (!coeff.is_zero()) {
                        VertexId rv = cur.generators()[static_cast<std::size_t>(done + row)].vertex;
                        if (v != -1 && v != rv) throw std::logic_error("filt_normalize: vertex-mixed kernel vector");
                        v = rv;
                    }
                }
                gens[static_cast<std::size_t>(done + c)] = DgGenerator{shift, v};
            }

            BasisChange step = change_basis(cur, u, gens);
            out.iso = compose(step.to_result, out.iso);
            out.iso_inverse = compose(out.iso_inverse, step.from_result);
            out.result = step.result;
            out.iso.target = out.result;
            out.iso_inverse.source = out.result;

            std::vector<int> layer_positions;
            for (std::size_t c = 0; c < layer.size(); ++c) layer_positions.push_back(done + static_cast<int>(c));
            block_layers.push_back(layer_positions);
            done += static_cast<int>(layer.size());
        }
        out.layers.push_back(block_layers);
        start = stop;
    }

    if (!out.result.is_filt())
        throw Error(ErrorCode::VerificationFailed, "filt_normalize produced a non-Filt module");
    return out;
}

DgModule tau_le(const DgModule& m, int n) {
    require_filt(m, "tau_le");
    int count = 0;
    while (count < m.generator_count() && -m.generators()[static_cast<std::size_t>(count)].shift <= n) ++count;
    std::vector<DgGenerator> gens(m.generators().begin(), m.generators().begin() + count);
    ElementMatrix diff;
    for (const auto& [pos, a] : m.differential())
        if (pos.first < count && pos.second < count) diff.insert({pos, a});
    return DgModule::validate(m.algebra(), std::move(gens), std::move(diff));
}

DgModule tau_ge(const DgModule& m, int n) {
    require_filt(m, "tau_ge");
    int first = 0;
    while (first < m.generator_count() && -m.generators()[static_cast<std::size_t>(first)].shift < n) ++first;
    std::vector<DgGenerator> gens(m.generators().begin() + first, m.generators().end());
    ElementMatrix diff;
    for (const auto& [pos, a] : m.differential())
        if (pos.first >= first && pos.second >= first) diff.insert({{pos.first - first, pos.second - first}, a});
    return DgModule::validate(m.algebra(), std::move(gens), std::move(diff));
}

TruncationTriangle truncation_triangle(const DgModule& m, int n) {
    TruncationTriangle out{tau_le(m, n), tau_ge(m, n + 1), ChainMap(), ChainMap()};
    const GradedAlgebra& A = *m.algebra();
    int lower_count = out.lower.generator_count();
    int upper_first = m.generator_count() - out.upper.generator_count();
    out.inclusion = ChainMap::zero(out.lower, m, 0);
    for (int i = 0; i < lower_count; ++i)
        out.inclusion.set_entry(i, i, A.unit_at(m.generators()[static_cast<std::size_t>(i)].vertex));
    out.projection = ChainMap::zero(m, out.upper, 0);
    for (int i = upper_first; i < m.generator_count(); ++i)
        out.projection.set_entry(i - upper_first, i, A.unit_at(m.generators()[static_cast<std::size_t>(i)].vertex));
    return out;
}

} // namespace dgper
