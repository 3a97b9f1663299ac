#include "dgper/dgmod.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dgper {

namespace {

bool shifts_sorted_desc(const std::vector<DgGenerator>& gens) {
    for (std::size_t i = 1; i < gens.size(); ++i)
        if (gens[i - 1].shift < gens[i].shift) return false;
    return true;
}

} // namespace

DgModule DgModule::validate(AlgebraPtr alg, std::vector<DgGenerator> gens, ElementMatrix diff) {
    DgModule m;
    m.alg_ = std::move(alg);
    m.gens_ = std::move(gens);
    const GradedAlgebra& A = *m.alg_;
    int n = m.generator_count();
    for (const DgGenerator& g : m.gens_)
        if (g.vertex < 0 || g.vertex >= A.vertex_count())
            throw Error(ErrorCode::VertexMismatch, "generator references an unknown vertex");

    for (auto& [pos, a] : diff) {
        auto [j, i] = pos;
        if (j < 0 || j >= n || i < 0 || i >= n)
            throw Error(ErrorCode::ValidationError, "differential entry outside the generator range");
        if (a.is_zero()) continue;
        int want = m.gens_[static_cast<std::size_t>(j)].shift - m.gens_[static_cast<std::size_t>(i)].shift + 1;
        if (want < 0)
            throw Error(ErrorCode::DegreeMismatch,
                        "entry (" + std::to_string(j) + "," + std::to_string(i) + ") would need negative degree");
        if (a.degree() != want)
            throw Error(ErrorCode::DegreeMismatch,
                        "entry (" + std::to_string(j) + "," + std::to_string(i) + ") has degree " +
                            std::to_string(a.degree()) + ", expected " + std::to_string(want));
        if (a.left_vertex() != m.gens_[static_cast<std::size_t>(j)].vertex ||
            a.right_vertex() != m.gens_[static_cast<std::size_t>(i)].vertex)
            throw Error(ErrorCode::VertexMismatch,
                        "entry (" + std::to_string(j) + "," + std::to_string(i) + ") has mismatched vertices");
        m.diff_.insert_or_assign(pos, a);
    }

    // d^2 = 0: for all (k, i): sum_j a_{kj} a_{ji} + (-1)^{l_k} d_A(a_{ki}) = 0
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            int deg = m.gens_[static_cast<std::size_t>(k)].shift - m.gens_[static_cast<std::size_t>(i)].shift + 2;
            if (deg < 0) continue;
            AlgebraElement acc = A.zero_element(deg, m.gens_[static_cast<std::size_t>(k)].vertex,
                                                m.gens_[static_cast<std::size_t>(i)].vertex);
            bool touched = false;
            for (int j = 0; j < n; ++j) {
                auto kj = m.diff_.find({k, j});
                if (kj == m.diff_.end()) continue;
                auto ji = m.diff_.find({j, i});
                if (ji == m.diff_.end()) continue;
                acc = acc + multiply(kj->second, ji->second);
                touched = true;
            }
            auto ki = m.diff_.find({k, i});
            if (ki != m.diff_.end() && A.has_derivation()) {
                AlgebraElement da = apply_derivation(ki->second);
                if (m.gens_[static_cast<std::size_t>(k)].shift % 2 != 0) da = -da;
                acc = acc + da;
                touched = true;
            }
            if (touched && !acc.is_zero())
                throw Error(ErrorCode::DSquareViolation,
                            "d^2 is nonzero at (" + std::to_string(k) + "," + std::to_string(i) + ")");
        }
    }

    bool tri = true;
    for (const auto& [pos, a] : m.diff_)
        if (pos.first >= pos.second) { tri = false; break; }
    m.filt_ = tri && shifts_sorted_desc(m.gens_);
    return m;
}

bool DgModule::is_flag() const {
    if (!filt_) return false;
    for (const DgGenerator& g : gens_)
        if (g.shift != 0) return false;
    return true;
}

AlgebraElement DgModule::entry(int j, int i) const {
    auto it = diff_.find({j, i});
    if (it != diff_.end()) return it->second;
    int deg = gens_[static_cast<std::size_t>(j)].shift - gens_[static_cast<std::size_t>(i)].shift + 1;
    return alg_->zero_element(deg < 0 ? 0 : deg, gens_[static_cast<std::size_t>(j)].vertex,
                              gens_[static_cast<std::size_t>(i)].vertex);
}

bool DgModule::operator==(const DgModule& o) const {
    if (!alg_->same_as(*o.alg_)) return false;
    if (!(gens_.size() == o.gens_.size())) return false;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (!(gens_[i] == o.gens_[i])) return false;
    return diff_ == o.diff_;
}

std::string DgModule::presentation_key() const {
    std::ostringstream os;
    for (const DgGenerator& g : gens_) os << "(" << g.shift << "," << g.vertex << ")";
    os << "|";
    for (const auto& [pos, a] : diff_) os << pos.first << "," << pos.second << ":" << a.str() << ";";
    return os.str();
}

DgModule generator_module(AlgebraPtr alg, VertexId x, int shift) {
    return DgModule::validate(std::move(alg), {DgGenerator{shift, x}}, {});
}

DgModule shift_module(const DgModule& m, int n) {
    std::vector<DgGenerator> gens = m.generators();
    for (DgGenerator& g : gens) g.shift += n;
    ElementMatrix diff;
    for (const auto& [pos, a] : m.differential()) diff.insert_or_assign(pos, (n % 2 == 0) ? a : -a);
    return DgModule::validate(m.algebra(), std::move(gens), std::move(diff));
}

DgModule direct_sum(const DgModule& a, const DgModule& b) {
    if (!a.algebra()->same_as(*b.algebra()))
        throw Error(ErrorCode::ValidationError, "direct sum of modules over different algebras");
    int na = a.generator_count();
    std::vector<DgGenerator> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    ElementMatrix diff = a.differential();
    for (const auto& [pos, e] : b.differential()) diff.insert_or_assign({pos.first + na, pos.second + na}, e);

    if (a.is_filt() && b.is_filt()) {
        // stable re-sort by shift descending keeps strict triangularity
        int n = static_cast<int>(gens.size());
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&gens](int p, int q) { return gens[static_cast<std::size_t>(p)].shift > gens[static_cast<std::size_t>(q)].shift; });
        std::vector<int> where(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) where[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
        std::vector<DgGenerator> sorted;
        sorted.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) sorted.push_back(gens[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
        ElementMatrix permuted;
        for (const auto& [pos, e] : diff)
            permuted.insert_or_assign({where[static_cast<std::size_t>(pos.first)], where[static_cast<std::size_t>(pos.second)]}, e);
        return DgModule::validate(a.algebra(), std::move(sorted), std::move(permuted));
    }
    return DgModule::validate(a.algebra(), std::move(gens), std::move(diff));
}

ReducedComplex reduced_module(const DgModule& m) {
    ReducedComplex out;
    const Field& k = m.algebra()->field();
    int n = m.generator_count();
    for (int i = 0; i < n; ++i) out.slots[-m.generators()[static_cast<std::size_t>(i)].shift].push_back(i);

    std::map<int, std::map<int, int>> pos_in_slot; // degree -> gen -> position
    for (auto& [d, gens] : out.slots)
        for (std::size_t p = 0; p < gens.size(); ++p) pos_in_slot[d][gens[p]] = static_cast<int>(p);

    for (auto& [d, gens] : out.slots) {
        auto next = out.slots.find(d + 1);
        Mat mat(k, next == out.slots.end() ? 0 : static_cast<int>(next->second.size()), static_cast<int>(gens.size()));
        if (next != out.slots.end()) {
            for (std::size_t c = 0; c < gens.size(); ++c) {
                for (std::size_t r = 0; r < next->second.size(); ++r) {
                    auto it = m.differential().find({next->second[r], gens[c]});
                    if (it == m.differential().end()) continue;
                    mat.at(static_cast<int>(r), static_cast<int>(c)) = it->second.scalar_part();
                }
            }
        }
        out.diff.emplace(d, std::move(mat));
    }

    for (auto& [d, gens] : out.slots) {
        int dim = static_cast<int>(gens.size());
        int rank_out = rank(out.diff.at(d));
        int rank_in = 0;
        auto prev = out.diff.find(d - 1);
        if (prev != out.diff.end()) rank_in = rank(prev->second);
        int h = dim - rank_out - rank_in;
        if (h != 0) {
            out.h_dim[d] = h;
            out.support.insert(d);
            out.total_h_dim += h;
        }
    }
    return out;
}

std::optional<std::pair<int, int>> t_bounds(const DgModule& m) {
    ReducedComplex red = reduced_module(m);
    if (red.support.empty()) return std::nullopt;
    return std::make_pair(*red.support.begin(), *red.support.rbegin());
}

GradedSlice module_component(const DgModule& m, int i) {
    GradedSlice out;
    const GradedAlgebra& A = *m.algebra();
    for (int j = 0; j < m.generator_count(); ++j) {
        const DgGenerator& g = m.generators()[static_cast<std::size_t>(j)];
        int d = i + g.shift;
        if (d < 0) continue;
        if (d > A.degree_cap())
            throw Error(ErrorCode::CapExceeded,
                        "graded piece in degree " + std::to_string(i) + " needs A^" + std::to_string(d) +
                            " beyond the cap");
        for (VertexId y = 0; y < A.vertex_count(); ++y)
            for (BasisId b : A.component_basis(g.vertex, y, d)) out.coords.push_back({j, b});
    }
    for (std::size_t p = 0; p < out.coords.size(); ++p) out.index[out.coords[p]] = static_cast<int>(p);
    return out;
}

Mat module_diff_matrix(const DgModule& m, int i, const GradedSlice& from, const GradedSlice& to) {
    const GradedAlgebra& A = *m.algebra();
    Mat mat(A.field(), static_cast<int>(to.coords.size()), static_cast<int>(from.coords.size()));
    for (std::size_t c = 0; c < from.coords.size(); ++c) {
        auto [j, b] = from.coords[c];
        AlgebraElement eb = A.basis_element(b);
        // d(g_j b) = sum_k g_k (a_{kj} b) + (-1)^{l_j} g_j d_A(b)
        for (int k = 0; k < m.generator_count(); ++k) {
            auto it = m.differential().find({k, j});
            if (it == m.differential().end()) continue;
            AlgebraElement prod = multiply(it->second, eb);
            for (const auto& [tb, coeff] : prod.terms()) {
                auto pos = to.index.find({k, tb});
                if (pos == to.index.end()) throw std::logic_error("module_diff_matrix: target coordinate missing");
                mat.at(pos->second, static_cast<int>(c)) = mat.at(pos->second, static_cast<int>(c)) + coeff;
            }
        }
        if (A.has_derivation()) {
            AlgebraElement db = apply_derivation(eb);
            if (m.generators()[static_cast<std::size_t>(j)].shift % 2 != 0) db = -db;
            for (const auto& [tb, coeff] : db.terms()) {
                auto pos = to.index.find({j, tb});
                if (pos == to.index.end()) throw std::logic_error("module_diff_matrix: target coordinate missing");
                mat.at(pos->second, static_cast<int>(c)) = mat.at(pos->second, static_cast<int>(c)) + coeff;
            }
        }
    }
    (void)i;
    return mat;
}

Cohomology cohomology(const DgModule& m, int i) {
    const Field& k = m.algebra()->field();
    GradedSlice below = module_component(m, i - 1);
    GradedSlice here = module_component(m, i);
    GradedSlice above = module_component(m, i + 1);
    Mat d_in = module_diff_matrix(m, i - 1, below, here);
    Mat d_out = module_diff_matrix(m, i, here, above);

    std::vector<std::vector<Scalar>> cycles = kernel_basis(d_out);

    Cohomology out;
    SpanBuilder total(k, static_cast<int>(here.coords.size()));
    for (int c = 0; c < d_in.cols(); ++c) total.insert(d_in.col(c));
    for (const std::vector<Scalar>& z : cycles) {
        if (total.insert(z)) out.basis.push_back(z);
    }
    out.dim = static_cast<int>(out.basis.size());
    return out;
}

} // namespace dgper
