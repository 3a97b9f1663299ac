#include "dgper/quotient.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dgper {

namespace {

struct PathKey {
    std::vector<int> arrows; // arrow indices, left to right
    VertexId base = -1;      // distinguishes the empty path per vertex
    bool operator<(const PathKey& o) const {
        if (arrows != o.arrows) return arrows < o.arrows;
        return base < o.base;
    }
};

struct Path {
    PathKey key;
    VertexId left = 0, right = 0;
    int degree = 0;
};

struct DegreeSlice {
    std::vector<Path> paths;            // enumeration order
    std::map<PathKey, int> index;       // path -> position
    // quotient data, filled once relations are processed:
    std::vector<int> survivors;          // positions of surviving paths (the basis), ascending
    std::map<int, std::vector<std::pair<int, Scalar>>> rewrite; // eliminated position -> combo of surviving positions
};

std::string path_name(const std::vector<Arrow>& arrows, const std::vector<std::string>& vertices, const Path& p) {
    if (p.key.arrows.empty()) return "e_" + vertices[static_cast<std::size_t>(p.left)];
    std::ostringstream os;
    for (std::size_t i = 0; i < p.key.arrows.size(); ++i) {
        if (i) os << "*";
        os << arrows[static_cast<std::size_t>(p.key.arrows[i])].name;
    }
    return os.str();
}

} // namespace

AlgebraPtr build_quotient_algebra(const Field& field,
                                  const std::vector<std::string>& vertices,
                                  const std::vector<Arrow>& arrows,
                                  const std::vector<Relation>& relations,
                                  int degree_cap) {
    if (degree_cap < 0) throw Error(ErrorCode::CapExceeded, "degree cap must be nonnegative");

    std::map<std::string, VertexId> vid;
    for (std::size_t i = 0; i < vertices.size(); ++i) vid[vertices[i]] = static_cast<VertexId>(i);

    struct ArrowInfo {
        int degree;
        VertexId left, right;
    };
    std::vector<ArrowInfo> ainfo;
    std::map<std::string, int> arrow_id;
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        const Arrow& a = arrows[i];
        if (a.degree < 1)
            throw Error(ErrorCode::InconsistentRelation, "arrow '" + a.name + "' must have degree >= 1");
        auto lit = vid.find(a.left);
        auto rit = vid.find(a.right);
        if (lit == vid.end() || rit == vid.end())
            throw Error(ErrorCode::VertexMismatch, "arrow '" + a.name + "' references an unknown vertex");
        if (arrow_id.count(a.name))
            throw Error(ErrorCode::ValidationError, "duplicate arrow name '" + a.name + "'");
        arrow_id[a.name] = static_cast<int>(i);
        ainfo.push_back({a.degree, lit->second, rit->second});
    }

    // paths per degree, lexicographic in arrow indices
    std::vector<DegreeSlice> slices(static_cast<std::size_t>(degree_cap) + 1);
    for (VertexId x = 0; x < static_cast<VertexId>(vertices.size()); ++x)
        slices[0].paths.push_back(Path{PathKey{{}, x}, x, x, 0});
    // the empty path key is shared by every vertex; the degree-0 index is
    // only consulted for concatenations, where left/right pin the vertex
    for (std::size_t i = 0; i < slices[0].paths.size(); ++i) slices[0].index[slices[0].paths[i].key] = static_cast<int>(i);
    for (int d = 1; d <= degree_cap; ++d) {
        for (std::size_t a = 0; a < arrows.size(); ++a) {
            int rest = d - ainfo[a].degree;
            if (rest < 0) continue;
            for (const Path& q : slices[static_cast<std::size_t>(rest)].paths) {
                if (q.key.arrows.empty()) {
                    if (q.left != ainfo[a].right) continue;
                } else if (ainfo[a].right != q.left) {
                    continue;
                }
                Path p;
                p.key.arrows.push_back(static_cast<int>(a));
                p.key.arrows.insert(p.key.arrows.end(), q.key.arrows.begin(), q.key.arrows.end());
                p.left = ainfo[a].left;
                p.right = q.key.arrows.empty() ? q.left : q.right;
                p.degree = d;
                slices[static_cast<std::size_t>(d)].paths.push_back(p);
            }
        }
        std::sort(slices[static_cast<std::size_t>(d)].paths.begin(), slices[static_cast<std::size_t>(d)].paths.end(),
                  [](const Path& a, const Path& b) { return a.key < b.key; });
        for (std::size_t i = 0; i < slices[static_cast<std::size_t>(d)].paths.size(); ++i)
            slices[static_cast<std::size_t>(d)].index[slices[static_cast<std::size_t>(d)].paths[i].key] = static_cast<int>(i);
    }

    // validate relations: homogeneous, composable, consistent endpoints
    struct CheckedRelation {
        int degree;
        VertexId left, right;
        std::vector<std::pair<Scalar, PathKey>> terms;
    };
    std::vector<CheckedRelation> checked;
    for (const Relation& rel : relations) {
        if (rel.empty()) continue;
        CheckedRelation cr;
        bool first = true;
        for (const RelationTerm& term : rel) {
            if (term.path.empty())
                throw Error(ErrorCode::InconsistentRelation, "relation term with empty path (degree-0 relations are not allowed)");
            PathKey key;
            int deg = 0;
            VertexId l = -1, r = -1;
            for (std::size_t i = 0; i < term.path.size(); ++i) {
                auto it = arrow_id.find(term.path[i]);
                if (it == arrow_id.end())
                    throw Error(ErrorCode::InconsistentRelation, "relation uses unknown arrow '" + term.path[i] + "'");
                int a = it->second;
                if (i == 0)
                    l = ainfo[static_cast<std::size_t>(a)].left;
                else if (r != ainfo[static_cast<std::size_t>(a)].left)
                    throw Error(ErrorCode::InconsistentRelation, "relation path is not composable");
                r = ainfo[static_cast<std::size_t>(a)].right;
                deg += ainfo[static_cast<std::size_t>(a)].degree;
                key.arrows.push_back(a);
            }
            if (deg > degree_cap)
                throw Error(ErrorCode::CapExceeded, "relation of degree " + std::to_string(deg) + " exceeds the cap");
            if (first) {
                cr.degree = deg;
                cr.left = l;
                cr.right = r;
                first = false;
            } else if (cr.degree != deg || cr.left != l || cr.right != r) {
                throw Error(ErrorCode::InconsistentRelation, "relation is not homogeneous with fixed endpoints");
            }
            cr.terms.push_back({term.coeff, key});
        }
        checked.push_back(std::move(cr));
    }

    // degreewise quotient: rref of the ideal slice with pivots on the latest
    // path in enumeration order, so the earliest paths survive as the basis
    for (int d = 1; d <= degree_cap; ++d) {
        DegreeSlice& slice = slices[static_cast<std::size_t>(d)];
        int np = static_cast<int>(slice.paths.size());
        std::vector<std::vector<Scalar>> ideal_rows;
        for (const CheckedRelation& cr : checked) {
            int free_deg = d - cr.degree;
            if (free_deg < 0) continue;
            for (int dl = 0; dl <= free_deg; ++dl) {
                int dr = free_deg - dl;
                for (const Path& p : slices[static_cast<std::size_t>(dl)].paths) {
                    if (p.right != cr.left) continue;
                    for (const Path& q : slices[static_cast<std::size_t>(dr)].paths) {
                        if (q.left != cr.right) continue;
                        std::vector<Scalar> row(static_cast<std::size_t>(np), Scalar::zero(field));
                        bool any = false;
                        for (const auto& [c, key] : cr.terms) {
                            PathKey full;
                            full.arrows = p.key.arrows;
                            full.arrows.insert(full.arrows.end(), key.arrows.begin(), key.arrows.end());
                            full.arrows.insert(full.arrows.end(), q.key.arrows.begin(), q.key.arrows.end());
                            auto it = slice.index.find(full);
                            if (it == slice.index.end()) continue; // path vanished at lower degree? cannot happen here
                            row[static_cast<std::size_t>(it->second)] = row[static_cast<std::size_t>(it->second)] + c;
                            any = true;
                        }
                        if (any) ideal_rows.push_back(std::move(row));
                    }
                }
            }
        }

        if (ideal_rows.empty()) {
            for (int i = 0; i < np; ++i) slice.survivors.push_back(i);
            continue;
        }
        // reverse the column order so rref pivots on the largest path
        Mat m(field, static_cast<int>(ideal_rows.size()), np);
        for (std::size_t r = 0; r < ideal_rows.size(); ++r)
            for (int c = 0; c < np; ++c) m.at(static_cast<int>(r), c) = ideal_rows[r][static_cast<std::size_t>(np - 1 - c)];
        RrefResult rr = rref(m);
        std::vector<bool> eliminated(static_cast<std::size_t>(np), false);
        for (int r = 0; r < rr.rank; ++r) {
            int pivot_path = np - 1 - rr.pivot_cols[static_cast<std::size_t>(r)];
            eliminated[static_cast<std::size_t>(pivot_path)] = true;
        }
        for (int i = 0; i < np; ++i)
            if (!eliminated[static_cast<std::size_t>(i)]) slice.survivors.push_back(i);
        for (int r = 0; r < rr.rank; ++r) {
            int pivot_path = np - 1 - rr.pivot_cols[static_cast<std::size_t>(r)];
            std::vector<std::pair<int, Scalar>> combo;
            for (int c = 0; c < np; ++c) {
                if (c == rr.pivot_cols[static_cast<std::size_t>(r)]) continue;
                const Scalar& v = rr.reduced.at(r, c);
                if (v.is_zero()) continue;
                combo.push_back({np - 1 - c, -v});
            }
            std::sort(combo.begin(), combo.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            slice.rewrite[pivot_path] = std::move(combo);
        }
    }
    for (int i = 0; i < static_cast<int>(slices[0].paths.size()); ++i) slices[0].survivors.push_back(i);

    // assemble basis: degrees ascending, surviving paths in enumeration order
    GradedAlgebraData data;
    data.field = field;
    data.vertices = vertices;
    data.degree_cap = degree_cap;
    std::vector<std::vector<int>> basis_of(static_cast<std::size_t>(degree_cap) + 1); // degree -> list of basis ids
    std::vector<std::map<int, BasisId>> path_to_basis(static_cast<std::size_t>(degree_cap) + 1);
    for (int d = 0; d <= degree_cap; ++d) {
        for (int pos : slices[static_cast<std::size_t>(d)].survivors) {
            const Path& p = slices[static_cast<std::size_t>(d)].paths[static_cast<std::size_t>(pos)];
            BasisElem be;
            be.name = path_name(arrows, vertices, p);
            be.degree = d;
            be.left = p.left;
            be.right = p.right;
            BasisId id = static_cast<BasisId>(data.basis.size());
            data.basis.push_back(be);
            basis_of[static_cast<std::size_t>(d)].push_back(pos);
            path_to_basis[static_cast<std::size_t>(d)][pos] = id;
        }
    }

    // product table by concatenation and rewrite
    for (int d1 = 0; d1 <= degree_cap; ++d1) {
        for (int pos1 : slices[static_cast<std::size_t>(d1)].survivors) {
            const Path& p1 = slices[static_cast<std::size_t>(d1)].paths[static_cast<std::size_t>(pos1)];
            BasisId id1 = path_to_basis[static_cast<std::size_t>(d1)].at(pos1);
            for (int d2 = 0; d1 + d2 <= degree_cap; ++d2) {
                for (int pos2 : slices[static_cast<std::size_t>(d2)].survivors) {
                    const Path& p2 = slices[static_cast<std::size_t>(d2)].paths[static_cast<std::size_t>(pos2)];
                    if (p1.right != p2.left) continue;
                    BasisId id2 = path_to_basis[static_cast<std::size_t>(d2)].at(pos2);
                    int d = d1 + d2;
                    PathKey full;
                    full.arrows = p1.key.arrows;
                    full.arrows.insert(full.arrows.end(), p2.key.arrows.begin(), p2.key.arrows.end());
                    if (full.arrows.empty()) full.base = p1.left;
                    const DegreeSlice& slice = slices[static_cast<std::size_t>(d)];
                    int fpos = slice.index.at(full);
                    TermList terms;
                    auto rw = slice.rewrite.find(fpos);
                    if (rw == slice.rewrite.end()) {
                        terms.push_back({path_to_basis[static_cast<std::size_t>(d)].at(fpos), Scalar::one(field)});
                    } else {
                        for (const auto& [spos, c] : rw->second)
                            terms.push_back({path_to_basis[static_cast<std::size_t>(d)].at(spos), c});
                        std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
                    }
                    data.products[{id1, id2}] = std::move(terms);
                }
            }
        }
    }

    return GradedAlgebra::validate(std::move(data));
}

} // namespace dgper
