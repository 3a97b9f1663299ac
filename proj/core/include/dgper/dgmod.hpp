#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dgper/algebra.hpp"

namespace dgper {

struct DgGenerator {
    int shift = 0;      // generator g sits in degree -shift
    VertexId vertex = 0;

    bool operator==(const DgGenerator& o) const { return shift == o.shift && vertex == o.vertex; }
};

/// Sparse matrix of homogeneous algebra elements keyed by (row, col).
using ElementMatrix = std::map<std::pair<int, int>, AlgebraElement>;

/// A perfect dg module presented by a finite semifree generator list and a
/// matrix differential. Conventions: generator g_i has degree -l_i,
/// d(g_i) = sum_j g_j a_{ji} with a_{ji} in e_{x_j} A^{l_j - l_i + 1} e_{x_i},
/// and d(g b) = d(g) b + (-1)^{-l} g d_A(b).
///
/// A module is in Filt form when the shifts are weakly decreasing and the
/// differential is strictly upper triangular (a_{ji} != 0 only for j < i); it
/// is a flag (heart) object when additionally every shift is zero.
class DgModule {
public:
    /// An empty placeholder; every real module comes out of validate().
    DgModule() = default;

    /// Checks degree/vertex typing of every entry and the d^2 = 0 matrix
    /// identity entry-exactly, then classifies. Throws DegreeMismatch,
    /// VertexMismatch, DSquareViolation, CapExceeded.
    static DgModule validate(AlgebraPtr alg, std::vector<DgGenerator> gens, ElementMatrix diff);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<DgGenerator>& generators() const { return gens_; }
    int generator_count() const { return static_cast<int>(gens_.size()); }
    const ElementMatrix& differential() const { return diff_; }

    bool is_filt() const { return filt_; }
    bool is_flag() const; // filt with all shifts zero
    bool is_zero() const { return gens_.empty(); }

    /// The entry a_{ji}; a zero element of the right slot when absent or when
    /// the slot degree is negative.
    AlgebraElement entry(int j, int i) const;

    bool operator==(const DgModule& o) const;

    /// Deterministic printable key (used to order KRS summands).
    std::string presentation_key() const;

private:
    AlgebraPtr alg_;
    std::vector<DgGenerator> gens_;
    ElementMatrix diff_;
    bool filt_ = false;
};

/// {l} L̂_x: the one-generator module with empty differential.
DgModule generator_module(AlgebraPtr alg, VertexId x, int shift);

/// Adds n to every shift and multiplies the differential by (-1)^n.
DgModule shift_module(const DgModule& m, int n);

/// Concatenates generators and block-diagonals the differentials; when both
/// inputs are in Filt form the result is stably re-sorted by shift and stays
/// Filt.
DgModule direct_sum(const DgModule& a, const DgModule& b);

/// The reduced complex M̄ = M / M A^+ over A^0: one scalar slot per
/// generator, differential the scalar parts of D.
struct ReducedComplex {
    std::map<int, std::vector<int>> slots;       // degree -> generator indices
    std::map<int, Mat> diff;                     // degree d -> matrix slots[d] -> slots[d+1]
    std::map<int, int> h_dim;                    // cohomology dimension per degree (nonzero entries only)
    std::set<int> support;                       // supp H(M̄)
    int total_h_dim = 0;
};

ReducedComplex reduced_module(const DgModule& m);

/// Minimal interval containing supp H(M̄); nullopt for the zero class.
std::optional<std::pair<int, int>> t_bounds(const DgModule& m);

/// Basis of the graded piece M^i as pairs (generator j, algebra basis id b)
/// with deg b = i + l_j and left(b) = x_j. Throws CapExceeded when some
/// generator's contribution would live above the algebra cap.
struct GradedSlice {
    std::vector<std::pair<int, BasisId>> coords;
    std::map<std::pair<int, BasisId>, int> index;
};

GradedSlice module_component(const DgModule& m, int i);

/// Matrix of d : M^i -> M^{i+1} in the module_component bases.
Mat module_diff_matrix(const DgModule& m, int i, const GradedSlice& from, const GradedSlice& to);

struct Cohomology {
    int dim = 0;
    std::vector<std::vector<Scalar>> basis; // representatives in M^i coordinates
};

/// Exact cohomology H^i(M) of the total dg module.
Cohomology cohomology(const DgModule& m, int i);

} // namespace dgper
