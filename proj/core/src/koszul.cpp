#include "dgper/koszul.hpp"

#include <algorithm>

namespace dgper {

namespace {

struct TermSlice {
    std::vector<std::pair<int, BasisId>> coords; // (term generator, algebra basis)
    std::map<std::pair<int, BasisId>, int> index;
};

TermSlice term_slice(const GradedAlgebra& A, const std::vector<ResTermGen>& term, int d) {
    TermSlice out;
    for (std::size_t s = 0; s < term.size(); ++s) {
        int bdeg = d - term[s].degree;
        if (bdeg < 0 || bdeg > A.degree_cap()) continue;
        for (VertexId y = 0; y < A.vertex_count(); ++y)
            for (BasisId b : A.component_basis(term[s].vertex, y, bdeg)) out.coords.push_back({static_cast<int>(s), b});
    }
    for (std::size_t p = 0; p < out.coords.size(); ++p) out.index[out.coords[p]] = static_cast<int>(p);
    return out;
}

/// Matrix of a term map (entries element_{rs}: gen s of `from` -> gen r of
/// `to`) in degree d.
Mat term_map_matrix(const GradedAlgebra& A, const std::vector<ResTermGen>& from, const TermSlice& from_slice,
                    const TermSlice& to_slice, const ElementMatrix& entries, int d) {
    (void)from;
    (void)d;
    Mat out(A.field(), static_cast<int>(to_slice.coords.size()), static_cast<int>(from_slice.coords.size()));
    for (std::size_t c = 0; c < from_slice.coords.size(); ++c) {
        auto [s, b] = from_slice.coords[c];
        AlgebraElement eb = A.basis_element(b);
        for (const auto& [pos, m] : entries) {
            if (pos.second != s) continue;
            AlgebraElement prod = multiply(m, eb);
            for (const auto& [t, coeff] : prod.terms()) {
                auto it = to_slice.index.find({pos.first, t});
                if (it == to_slice.index.end()) throw std::logic_error("term_map_matrix: target coordinate missing");
                out.at(it->second, static_cast<int>(c)) = out.at(it->second, static_cast<int>(c)) + coeff;
            }
        }
    }
    return out;
}

} // namespace

Resolution minimal_resolution(const AlgebraPtr& alg, int length_cap, int degree_cap) {
    const GradedAlgebra& A = *alg;
    const Field& k = A.field();
    if (!A.derivation_is_zero())
        throw Error(ErrorCode::NonzeroDerivation, "resolutions are computed for algebras with zero differential");
    if (length_cap < 0 || degree_cap < 0) throw Error(ErrorCode::DegreeCapExceeded, "caps must be nonnegative");
    if (degree_cap > A.degree_cap())
        throw Error(ErrorCode::DegreeCapExceeded,
                    "resolution degree window " + std::to_string(degree_cap) + " exceeds the algebra cap " +
                        std::to_string(A.degree_cap()) + "; raise the algebra cap");

    Resolution res;
    res.algebra = alg;
    res.degree_window = degree_cap;
    res.diffs.push_back({}); // diffs[0] unused

    std::vector<ResTermGen> p0;
    for (VertexId x = 0; x < A.vertex_count(); ++x) p0.push_back(ResTermGen{x, 0});
    res.terms.push_back(p0);

    for (int step = 1; step <= length_cap; ++step) {
        const std::vector<ResTermGen>& source = res.terms.back();
        if (source.empty()) break;

        struct NewGen {
            VertexId vertex;
            int degree;
            std::vector<Scalar> coords; // in the source term's slice at `degree`
        };
        std::vector<NewGen> gens;

        std::map<int, TermSlice> slices;
        auto slice_of = [&](int d) -> const TermSlice& {
            auto it = slices.find(d);
            if (it == slices.end()) it = slices.emplace(d, term_slice(A, source, d)).first;
            return it->second;
        };
        auto expand_product = [&](const NewGen& v, BasisId b, int dtgt) {
            const TermSlice& src = slice_of(v.degree);
            const TermSlice& tgt = slice_of(dtgt);
            std::vector<Scalar> out(tgt.coords.size(), Scalar::zero(k));
            AlgebraElement eb = A.basis_element(b);
            for (std::size_t p = 0; p < src.coords.size(); ++p) {
                if (v.coords[p].is_zero()) continue;
                auto [s, c] = src.coords[p];
                AlgebraElement prod = multiply(A.basis_element(c), eb);
                for (const auto& [t, coeff] : prod.terms()) {
                    auto it = tgt.index.find({s, t});
                    if (it == tgt.index.end()) throw std::logic_error("minimal_resolution: product coordinate missing");
                    out[static_cast<std::size_t>(it->second)] =
                        out[static_cast<std::size_t>(it->second)] + v.coords[p] * coeff;
                }
            }
            return out;
        };

        for (int d = 0; d <= degree_cap; ++d) {
            const TermSlice& slice = slice_of(d);
            if (slice.coords.empty()) continue;

            std::vector<std::vector<Scalar>> kernel;
            if (step == 1) {
                // augmentation P_0 -> A^0: bijective in degree 0, zero above
                if (d == 0) continue;
                for (std::size_t p = 0; p < slice.coords.size(); ++p) {
                    std::vector<Scalar> unit(slice.coords.size(), Scalar::zero(k));
                    unit[p] = Scalar::one(k);
                    kernel.push_back(std::move(unit));
                }
            } else {
                const std::vector<ResTermGen>& prev = res.terms[res.terms.size() - 2];
                TermSlice prev_slice = term_slice(A, prev, d);
                Mat mat = term_map_matrix(A, source, slice, prev_slice, res.diffs.back(), d);
                kernel = kernel_basis(mat);
            }
            if (kernel.empty()) continue;

            SpanBuilder span(k, static_cast<int>(slice.coords.size()));
            for (const NewGen& v : gens) {
                int bdeg = d - v.degree;
                if (bdeg <= 0) continue;
                for (VertexId y = 0; y < A.vertex_count(); ++y)
                    for (BasisId b : A.component_basis(v.vertex, y, bdeg)) span.insert(expand_product(v, b, d));
            }
            for (std::vector<Scalar>& z : kernel) {
                std::optional<std::vector<Scalar>> residue = span.insert(std::move(z));
                if (!residue) continue;
                VertexId vx = -1;
                for (std::size_t p = 0; p < residue->size(); ++p) {
                    if ((*residue)[p].is_zero()) continue;
                    VertexId rv = A.basis_elem(slice.coords[p].second).right;
                    if (vx != -1 && vx != rv) throw std::logic_error("minimal_resolution: vertex-mixed syzygy");
                    vx = rv;
                }
                gens.push_back(NewGen{vx, d, *residue});
            }
        }

        if (gens.empty()) {
            // kernel exhausted inside the window. When the stored components
            // die before the cap, the algebra is the finite-dimensional object
            // it presents and syzygies of a term generated in degrees <= g
            // live in degrees <= g + top(A): certify once the window covers
            // that. For algebras still alive at the cap only the
            // window-relative claim is possible, gated on the first candidate
            // degree being visible.
            int max_gen_degree = 0;
            for (const ResTermGen& g : source) max_gen_degree = std::max(max_gen_degree, g.degree);
            int top = 0;
            for (const BasisElem& b : A.basis()) top = std::max(top, b.degree);
            if (top < A.degree_cap()) {
                if (degree_cap >= max_gen_degree + std::max(top, 1)) res.finite = true;
            } else {
                if (degree_cap >= max_gen_degree + 1) res.finite = true;
            }
            break;
        }

        std::vector<ResTermGen> term;
        ElementMatrix diff;
        for (std::size_t t = 0; t < gens.size(); ++t) {
            term.push_back(ResTermGen{gens[t].vertex, gens[t].degree});
            const TermSlice& src = slice_of(gens[t].degree);
            std::map<int, AlgebraElement> per_row;
            for (std::size_t p = 0; p < src.coords.size(); ++p) {
                if (gens[t].coords[p].is_zero()) continue;
                auto [s, b] = src.coords[p];
                auto it = per_row.find(s);
                if (it == per_row.end()) {
                    AlgebraElement elt = A.zero_element(A.basis_elem(b).degree, source[static_cast<std::size_t>(s)].vertex,
                                                        gens[t].vertex);
                    elt.set_coeff(b, gens[t].coords[p]);
                    per_row.emplace(s, elt);
                } else {
                    it->second.set_coeff(b, it->second.coeff(b) + gens[t].coords[p]);
                }
            }
            for (const auto& [s, elt] : per_row)
                if (!elt.is_zero()) diff.insert_or_assign({s, static_cast<int>(t)}, elt);
        }
        res.terms.push_back(std::move(term));
        res.diffs.push_back(std::move(diff));
    }
    return res;
}

void verify_resolution(const Resolution& res) {
    const GradedAlgebra& A = *res.algebra;
    // minimality: every differential entry lies in A^+
    for (std::size_t i = 1; i < res.diffs.size(); ++i)
        for (const auto& [pos, m] : res.diffs[i])
            if (m.degree() < 1 && !m.is_zero())
                throw Error(ErrorCode::VerificationFailed, "resolution differential has a scalar entry");

    for (std::size_t i = 1; i < res.terms.size(); ++i) {
        const std::vector<ResTermGen>& from = res.terms[i];
        const std::vector<ResTermGen>& to = res.terms[i - 1];
        for (int d = 0; d <= res.degree_window; ++d) {
            TermSlice from_slice = term_slice(A, from, d);
            TermSlice to_slice = term_slice(A, to, d);
            Mat mat = term_map_matrix(A, from, from_slice, to_slice, res.diffs[i], d);
            // kernel of the previous map at this degree
            int expected;
            if (i == 1) {
                expected = d == 0 ? 0 : static_cast<int>(to_slice.coords.size());
            } else {
                const std::vector<ResTermGen>& prev = res.terms[i - 2];
                TermSlice prev_slice = term_slice(A, prev, d);
                Mat prev_mat = term_map_matrix(A, to, to_slice, prev_slice, res.diffs[i - 1], d);
                expected = static_cast<int>(to_slice.coords.size()) - rank(prev_mat);
                // im ⊆ ker: the composite must vanish
                if (!(prev_mat * mat).is_zero())
                    throw Error(ErrorCode::VerificationFailed, "resolution composite d∘d is nonzero");
            }
            if (rank(mat) != expected)
                throw Error(ErrorCode::VerificationFailed,
                            "resolution not exact at term " + std::to_string(i - 1) + ", degree " + std::to_string(d));
        }
    }
    // when finite, the last differential must be injective degreewise
    if (res.finite && res.terms.size() >= 2) {
        const std::vector<ResTermGen>& last = res.terms.back();
        for (int d = 0; d <= res.degree_window; ++d) {
            TermSlice from_slice = term_slice(A, last, d);
            if (from_slice.coords.empty()) continue;
            TermSlice to_slice = term_slice(A, res.terms[res.terms.size() - 2], d);
            Mat mat = term_map_matrix(A, last, from_slice, to_slice, res.diffs.back(), d);
            if (rank(mat) != static_cast<int>(from_slice.coords.size()))
                throw Error(ErrorCode::VerificationFailed, "final syzygy map has a kernel inside the window");
        }
    }
}

KoszulCheck is_koszul(const Resolution& res) {
    KoszulCheck out;
    out.koszul = true;
    out.up_to_window_only = !res.finite;
    for (std::size_t i = 0; i < res.terms.size(); ++i) {
        for (const ResTermGen& g : res.terms[i]) {
            if (g.degree != static_cast<int>(i)) {
                out.koszul = false;
                out.offending_term = static_cast<int>(i);
                for (const ResTermGen& h : res.terms[i]) out.offending_degrees.push_back(h.degree);
                return out;
            }
        }
    }
    return out;
}

DgModule koszul_module(const Resolution& res) {
    const GradedAlgebra& A = *res.algebra;
    if (!A.derivation_is_zero())
        throw Error(ErrorCode::NonzeroDerivation, "K(A) is defined for algebras with zero differential");
    KoszulCheck check = is_koszul(res);
    if (!check.koszul)
        throw Error(ErrorCode::NotKoszul, "term P_{-" + std::to_string(check.offending_term) + "} is not generated purely");
    if (!res.finite)
        throw Error(ErrorCode::InfiniteResolution, "K(A) needs a finite resolution inside the degree window");

    std::vector<DgGenerator> gens;
    std::vector<int> offset; // flat index of the first generator of each term
    for (const std::vector<ResTermGen>& term : res.terms) {
        offset.push_back(static_cast<int>(gens.size()));
        for (const ResTermGen& g : term) gens.push_back(DgGenerator{0, g.vertex});
    }
    ElementMatrix diff;
    for (std::size_t n = 1; n < res.terms.size(); ++n) {
        bool odd = n % 2 != 0;
        for (const auto& [pos, m] : res.diffs[n])
            diff.insert_or_assign({offset[n - 1] + pos.first, offset[n] + pos.second}, odd ? -m : m);
    }
    DgModule k_mod = DgModule::validate(res.algebra, std::move(gens), std::move(diff));
    if (!k_mod.is_flag()) throw Error(ErrorCode::VerificationFailed, "K(A) is not a dgFlag presentation");
    return k_mod;
}

namespace {

/// Flat coordinates of the space ⊕_s Hom_gr(P_{-s}, {-twist} P_{-s+offset}):
/// the Hom-complex piece R_{-twist}^{offset}. The degree-i cocycle space uses
/// offset = twist = i; its coboundary lands in offset = i + 1 with the same
/// twist.
struct FamilySpace {
    // (s, r in term[s-offset], q in term[s], basis id)
    std::vector<std::tuple<int, int, int, BasisId>> coords;
    std::map<std::tuple<int, int, int, BasisId>, int> index;
    int dim = 0;
};

FamilySpace family_space(const Resolution& res, int offset, int twist) {
    const GradedAlgebra& A = *res.algebra;
    FamilySpace out;
    int len = static_cast<int>(res.terms.size()) - 1;
    for (int s = 0; s <= len; ++s) {
        if (s - offset < 0 || s - offset > len) continue;
        const std::vector<ResTermGen>& src = res.terms[static_cast<std::size_t>(s)];
        const std::vector<ResTermGen>& tgt = res.terms[static_cast<std::size_t>(s - offset)];
        for (std::size_t r = 0; r < tgt.size(); ++r)
            for (std::size_t q = 0; q < src.size(); ++q) {
                int bdeg = src[q].degree - twist - tgt[r].degree;
                if (bdeg < 0 || bdeg > A.degree_cap()) continue;
                for (BasisId b : A.component_basis(tgt[r].vertex, src[q].vertex, bdeg)) {
                    out.index[{s, static_cast<int>(r), static_cast<int>(q), b}] = static_cast<int>(out.coords.size());
                    out.coords.push_back({s, static_cast<int>(r), static_cast<int>(q), b});
                }
            }
    }
    out.dim = static_cast<int>(out.coords.size());
    return out;
}

using Family = std::vector<ElementMatrix>; // indexed by s: map P_{-s} -> {-i}P_{-s+i}

Family unflatten_family(const Resolution& res, int i, const FamilySpace& space, const std::vector<Scalar>& v) {
    const GradedAlgebra& A = *res.algebra;
    int len = static_cast<int>(res.terms.size()) - 1;
    Family fam(static_cast<std::size_t>(len) + 1);
    for (std::size_t p = 0; p < space.coords.size(); ++p) {
        if (v[p].is_zero()) continue;
        auto [s, r, q, b] = space.coords[p];
        ElementMatrix& mat = fam[static_cast<std::size_t>(s)];
        auto it = mat.find({r, q});
        if (it == mat.end()) {
            const ResTermGen& tg = res.terms[static_cast<std::size_t>(s - i)][static_cast<std::size_t>(r)];
            const ResTermGen& sg = res.terms[static_cast<std::size_t>(s)][static_cast<std::size_t>(q)];
            AlgebraElement elt = A.zero_element(sg.degree - i - tg.degree, tg.vertex, sg.vertex);
            elt.set_coeff(b, v[p]);
            mat.emplace(std::pair<int, int>{r, q}, elt);
        } else {
            it->second.set_coeff(b, it->second.coeff(b) + v[p]);
        }
    }
    return fam;
}

std::vector<Scalar> flatten_family(const Resolution& res, const FamilySpace& space, const Family& fam) {
    const Field& k = res.algebra->field();
    std::vector<Scalar> v(static_cast<std::size_t>(space.dim), Scalar::zero(k));
    for (std::size_t s = 0; s < fam.size(); ++s)
        for (const auto& [pos, elt] : fam[s])
            for (const auto& [b, c] : elt.terms()) {
                auto it = space.index.find({static_cast<int>(s), pos.first, pos.second, b});
                if (it == space.index.end()) throw std::logic_error("flatten_family: coordinate outside the family space");
                v[static_cast<std::size_t>(it->second)] = c;
            }
    return v;
}

/// The cocycle condition d_{-s+i} ∘ f_s - (-1)^i f_{s-1} ∘ d_{-s} = 0 as a
/// linear map from degree-i families to degree-(i+1)-shaped families (the
/// same diagonal index i, one term lower).
Family family_coboundary(const Resolution& res, int i, const Family& fam) {
    int len = static_cast<int>(res.terms.size()) - 1;
    bool odd = i % 2 != 0;
    Family out(static_cast<std::size_t>(len) + 1);
    auto accumulate = [&](int s, int r, int q, const AlgebraElement& a) {
        if (a.is_zero()) return;
        ElementMatrix& mat = out[static_cast<std::size_t>(s)];
        auto it = mat.find({r, q});
        if (it == mat.end()) {
            mat.emplace(std::pair<int, int>{r, q}, a);
        } else {
            AlgebraElement sum = it->second + a;
            if (sum.is_zero())
                mat.erase(it);
            else
                it->second = sum;
        }
    };
    for (int s = 0; s <= len; ++s) {
        // d_{-s+i} ∘ f_s : defined when 1 <= s - i <= len
        if (s - i >= 1 && s - i <= len) {
            const ElementMatrix& d = res.diffs[static_cast<std::size_t>(s - i)];
            for (const auto& [dpos, de] : d)
                for (const auto& [fpos, fe] : fam[static_cast<std::size_t>(s)]) {
                    if (dpos.second != fpos.first) continue;
                    accumulate(s, dpos.first, fpos.second, multiply(de, fe));
                }
        }
        // -(-1)^i f_{s-1} ∘ d_{-s} : defined when s >= 1
        if (s >= 1 && s - 1 >= 0) {
            const ElementMatrix& d = res.diffs[static_cast<std::size_t>(s)];
            for (const auto& [fpos, fe] : fam[static_cast<std::size_t>(s - 1)])
                for (const auto& [dpos, de] : d) {
                    if (fpos.second != dpos.first) continue;
                    AlgebraElement prod = multiply(fe, de);
                    if (!odd) prod = -prod;
                    accumulate(s, fpos.first, dpos.second, prod);
                }
        }
    }
    return out;
}

/// Space holding coboundary values: maps P_{-s} -> {-(i+1)} P_{-(s-i-1)}
/// written with the same (s, r, q) indexing.
FamilySpace coboundary_space(const Resolution& res, int i) { return family_space(res, i + 1, i); }

} // namespace

ExtAlgebra ext_algebra(const Resolution& res) {
    if (!res.finite)
        throw Error(ErrorCode::InfiniteResolution, "E(A) needs a finite resolution inside the degree window");
    const Field& k = res.algebra->field();
    int len = static_cast<int>(res.terms.size()) - 1;

    ExtAlgebra out;
    std::vector<std::pair<int, std::vector<Scalar>>> basis_flat; // (degree, coords in that degree's family space)
    std::vector<FamilySpace> spaces;
    for (int i = 0; i <= len; ++i) spaces.push_back(family_space(res, i, i));

    for (int i = 0; i <= len; ++i) {
        const FamilySpace& from = spaces[static_cast<std::size_t>(i)];
        FamilySpace to = coboundary_space(res, i);
        Mat sys(k, to.dim, from.dim);
        for (int c = 0; c < from.dim; ++c) {
            std::vector<Scalar> unit(static_cast<std::size_t>(from.dim), Scalar::zero(k));
            unit[static_cast<std::size_t>(c)] = Scalar::one(k);
            Family fam = unflatten_family(res, i, from, unit);
            sys.set_col(c, flatten_family(res, to, family_coboundary(res, i, fam)));
        }
        std::vector<std::vector<Scalar>> cocycles = kernel_basis(sys);
        out.graded_dims.push_back(static_cast<int>(cocycles.size()));
        for (std::vector<Scalar>& z : cocycles) {
            out.degree_of_basis.push_back(i);
            basis_flat.push_back({i, z});
            out.families.push_back(unflatten_family(res, i, spaces[static_cast<std::size_t>(i)], z));
        }
    }
    while (!out.graded_dims.empty() && out.graded_dims.back() == 0) out.graded_dims.pop_back();

    int dim = static_cast<int>(basis_flat.size());
    // per-degree expression matrices for re-expressing products in the basis
    std::map<int, std::pair<Mat, std::vector<int>>> per_degree; // degree -> (basis matrix, global indices)
    for (int d = 0; d <= len; ++d) {
        std::vector<int> idx;
        for (int g = 0; g < dim; ++g)
            if (basis_flat[static_cast<std::size_t>(g)].first == d) idx.push_back(g);
        Mat bm(k, spaces[static_cast<std::size_t>(d)].dim, static_cast<int>(idx.size()));
        for (std::size_t c = 0; c < idx.size(); ++c)
            bm.set_col(static_cast<int>(c), basis_flat[static_cast<std::size_t>(idx[c])].second);
        per_degree.emplace(d, std::make_pair(std::move(bm), std::move(idx)));
    }

    auto compose_families = [&](int i, const Family& f, int j, const Family& g) {
        // (f ⋆ g)_s = f_{s-j} ∘ g_s
        Family prod(static_cast<std::size_t>(len) + 1);
        for (int s = 0; s <= len; ++s) {
            if (s - j < 0 || s - j > len) continue;
            const ElementMatrix& fm = f[static_cast<std::size_t>(s - j)];
            const ElementMatrix& gm = g[static_cast<std::size_t>(s)];
            ElementMatrix& pm = prod[static_cast<std::size_t>(s)];
            for (const auto& [fp, fe] : fm)
                for (const auto& [gp, ge] : gm) {
                    if (fp.second != gp.first) continue;
                    AlgebraElement e = multiply(fe, ge);
                    if (e.is_zero()) continue;
                    std::pair<int, int> pos{fp.first, gp.second};
                    auto it = pm.find(pos);
                    if (it == pm.end()) {
                        pm.emplace(pos, e);
                    } else {
                        AlgebraElement sum = it->second + e;
                        if (sum.is_zero())
                            pm.erase(it);
                        else
                            it->second = sum;
                    }
                }
        }
        (void)i;
        return prod;
    };

    std::vector<std::vector<FdaElement>> mult(static_cast<std::size_t>(dim),
                                              std::vector<FdaElement>(static_cast<std::size_t>(dim)));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            int i = basis_flat[static_cast<std::size_t>(a)].first;
            int j = basis_flat[static_cast<std::size_t>(b)].first;
            FdaElement coords(static_cast<std::size_t>(dim), Scalar::zero(k));
            if (i + j <= len) {
                Family prod = compose_families(i, out.families[static_cast<std::size_t>(a)], j,
                                               out.families[static_cast<std::size_t>(b)]);
                std::vector<Scalar> flat = flatten_family(res, spaces[static_cast<std::size_t>(i + j)], prod);
                auto& [bm, idx] = per_degree.at(i + j);
                Mat rhs(k, bm.rows(), 1);
                rhs.set_col(0, flat);
                std::optional<Mat> sol = solve(bm, rhs);
                if (!sol) throw Error(ErrorCode::VerificationFailed, "Yoneda product left the cocycle space");
                for (std::size_t c = 0; c < idx.size(); ++c) coords[static_cast<std::size_t>(idx[c])] = sol->at(static_cast<int>(c), 0);
            }
            mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = std::move(coords);
        }

    // the identity family is the unit
    Family id_fam(static_cast<std::size_t>(len) + 1);
    for (int s = 0; s <= len; ++s) {
        const std::vector<ResTermGen>& term = res.terms[static_cast<std::size_t>(s)];
        for (std::size_t q = 0; q < term.size(); ++q)
            id_fam[static_cast<std::size_t>(s)].emplace(
                std::pair<int, int>{static_cast<int>(q), static_cast<int>(q)},
                res.algebra->unit_at(term[q].vertex));
    }
    FdaElement unit(static_cast<std::size_t>(dim), Scalar::zero(k));
    {
        auto& [bm, idx] = per_degree.at(0);
        Mat rhs(k, bm.rows(), 1);
        rhs.set_col(0, flatten_family(res, spaces[0], id_fam));
        std::optional<Mat> sol = solve(bm, rhs);
        if (!sol) throw Error(ErrorCode::VerificationFailed, "identity family is not a cocycle");
        for (std::size_t c = 0; c < idx.size(); ++c) unit[static_cast<std::size_t>(idx[c])] = sol->at(static_cast<int>(c), 0);
    }

    std::vector<std::string> labels;
    for (int g = 0; g < dim; ++g)
        labels.push_back("eps" + std::to_string(g) + "_d" + std::to_string(out.degree_of_basis[static_cast<std::size_t>(g)]));
    out.algebra = FiniteDimAlgebra::validate(k, std::move(labels), std::move(mult), std::move(unit));
    return out;
}

KoszulDualityReport verify_koszul_duality(const AlgebraPtr& alg, int length_cap, int degree_cap) {
    const GradedAlgebra& A = *alg;
    const Field& field = A.field();

    Resolution res = minimal_resolution(alg, length_cap, degree_cap);
    KoszulCheck check = is_koszul(res);
    if (!check.koszul)
        throw Error(ErrorCode::NotKoszul,
                    "P_{-" + std::to_string(check.offending_term) + "} is not generated purely in degree " +
                        std::to_string(check.offending_term));
    if (!res.finite)
        throw Error(ErrorCode::InfiniteResolution,
                    "resolution did not terminate within length " + std::to_string(length_cap) + ", window " +
                        std::to_string(degree_cap));
    verify_resolution(res);

    KoszulDualityReport report;
    report.resolution_length = static_cast<int>(res.terms.size()) - 1;
    report.koszul_mod = koszul_module(res);
    const DgModule& K = report.koszul_mod;
    int len = report.resolution_length;

    // H(K) must be A^0 concentrated in degree 0
    for (int i = 0; i + 1 <= A.degree_cap(); ++i) {
        int h = cohomology(K, i).dim;
        int expect = i == 0 ? A.vertex_count() : 0;
        if (h != expect)
            throw Error(ErrorCode::VerificationFailed,
                        "H^" + std::to_string(i) + "(K) has dimension " + std::to_string(h) + ", expected " +
                            std::to_string(expect));
    }
    report.k_injective = is_injective_heart(K);

    // A = P_0 sits inside K as the block of term-0 generators
    {
        std::vector<DgGenerator> agens;
        for (VertexId x = 0; x < A.vertex_count(); ++x) agens.push_back(DgGenerator{0, x});
        DgModule amod = DgModule::validate(alg, agens, {});
        ChainMap incl = ChainMap::zero(amod, K, 0);
        for (VertexId x = 0; x < A.vertex_count(); ++x) incl.set_entry(x, x, A.unit_at(x));
        report.contains_algebra = is_chain_map(incl);
    }

    ExtAlgebra ext = ext_algebra(res);
    report.ext_dims = ext.graded_dims;

    // block structure of K's generators: flat index -> resolution term
    std::vector<int> block;
    for (int n = 0; n <= len; ++n)
        for (std::size_t q = 0; q < res.terms[static_cast<std::size_t>(n)].size(); ++q) block.push_back(n);
    std::vector<int> offset;
    {
        int acc = 0;
        for (int n = 0; n <= len; ++n) {
            offset.push_back(acc);
            acc += static_cast<int>(res.terms[static_cast<std::size_t>(n)].size());
        }
    }

    // graded pieces of End_♥(K) for the diagonal grading, by restricted solves
    std::vector<ChainMap> all_end = chain_maps_basis(K, K, 0);
    HomSpace end_space = hom_space(K, K, 0);
    auto diagonal_dim = [&](int i) {
        // columns: unit maps with block(target) = block(source) - i
        std::vector<int> cols;
        for (int c = 0; c < end_space.dim; ++c) {
            auto [j, i2, b] = end_space.coords[static_cast<std::size_t>(c)];
            if (block[static_cast<std::size_t>(j)] == block[static_cast<std::size_t>(i2)] - i) cols.push_back(c);
        }
        if (cols.empty()) return std::make_pair(0, std::vector<std::vector<Scalar>>{});
        HomSpace to = hom_space(K, K, 1);
        Mat sys(field, to.dim, static_cast<int>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            auto [j, i2, b] = end_space.coords[static_cast<std::size_t>(cols[c])];
            ChainMap unit = ChainMap::zero(K, K, 0);
            AlgebraElement e = unit.entry(j, i2);
            e.set_coeff(b, Scalar::one(field));
            unit.entries.insert_or_assign({j, i2}, e);
            sys.set_col(static_cast<int>(c), flatten(to, hom_differential(unit), field));
        }
        std::vector<std::vector<Scalar>> ker = kernel_basis(sys);
        return std::make_pair(static_cast<int>(ker.size()), ker);
    };

    report.nonnegatively_graded = true;
    for (int i = -len; i < 0; ++i)
        if (diagonal_dim(i).first != 0) report.nonnegatively_graded = false;
    int total_graded = 0;
    for (int i = 0; i <= len; ++i) {
        int d = diagonal_dim(i).first;
        report.end_dims.push_back(d);
        total_graded += d;
    }
    while (!report.end_dims.empty() && report.end_dims.back() == 0) report.end_dims.pop_back();
    if (total_graded != static_cast<int>(all_end.size()))
        throw Error(ErrorCode::VerificationFailed, "graded End pieces do not fill End(K)");

    report.dims_match = report.ext_dims == report.end_dims;

    // the correspondence: a cocycle family becomes the chain endomorphism of
    // K with the same component matrices
    std::vector<ChainMap> images;
    for (std::size_t g = 0; g < ext.families.size(); ++g) {
        int i = ext.degree_of_basis[g];
        ChainMap F = ChainMap::zero(K, K, 0);
        for (int s = 0; s <= len; ++s) {
            for (const auto& [pos, elt] : ext.families[g][static_cast<std::size_t>(s)]) {
                F.entries.insert_or_assign({offset[static_cast<std::size_t>(s - i)] + pos.first,
                                            offset[static_cast<std::size_t>(s)] + pos.second},
                                           elt);
            }
        }
        if (!is_chain_map(F))
            throw Error(ErrorCode::VerificationFailed, "cocycle image is not a chain endomorphism of K");
        images.push_back(std::move(F));
    }
    // bijectivity on bases: images are independent and match the graded dims
    {
        Mat flat(field, end_space.dim, static_cast<int>(images.size()));
        for (std::size_t c = 0; c < images.size(); ++c) flat.set_col(static_cast<int>(c), flatten(end_space, images[c], field));
        report.correspondence_bijective =
            rank(flat) == static_cast<int>(images.size()) && static_cast<int>(images.size()) == static_cast<int>(all_end.size());
    }

    // structure transport: composing images must follow E(A)'s constants
    report.products_match = true;
    for (std::size_t a = 0; a < images.size() && report.products_match; ++a)
        for (std::size_t b = 0; b < images.size(); ++b) {
            ChainMap lhs = compose(images[a], images[b]);
            FdaElement coords = ext.algebra.multiply(ext.algebra.basis_vec(static_cast<int>(a)),
                                                     ext.algebra.basis_vec(static_cast<int>(b)));
            ChainMap rhs = ChainMap::zero(K, K, 0);
            for (std::size_t t = 0; t < images.size(); ++t) {
                if (coords[t].is_zero()) continue;
                rhs = rhs + images[t].scaled(coords[t]);
            }
            if (!(lhs == rhs)) {
                report.products_match = false;
                break;
            }
        }

    report.verified = report.dims_match && report.correspondence_bijective && report.products_match &&
                      report.k_injective && report.contains_algebra && report.nonnegatively_graded;
    if (!report.verified)
        throw Error(ErrorCode::VerificationFailed, "Koszul duality verification failed an exact check");
    return report;
}

} // namespace dgper
