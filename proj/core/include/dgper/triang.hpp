#pragma once

#include "dgper/hom.hpp"

namespace dgper {

/// Mapping cone of a degree-0 chain map f : X -> Y: the graded module
/// Y ⊕ {1}X with differential (d_Y f; 0 -d_X).
DgModule cone(const ChainMap& f);

struct Elimination {
    int row = 0; // generator index of the target (at elimination time)
    int col = 0; // generator index of the cancelled source
};

/// Result of Gaussian elimination to homotopically minimal form. forward and
/// backward are mutually inverse homotopy equivalences (forward ∘ backward is
/// the identity on the result on the nose).
struct MinimizationTrace {
    DgModule result;
    ChainMap forward;  // input -> result
    ChainMap backward; // result -> input
    std::vector<Elimination> log;
};

/// Cancels invertible scalar entries of the differential until
/// d(M) ⊂ M A^+. Pivots are scanned in (row, col) index order.
MinimizationTrace minimize(const DgModule& m);

/// Invertible scalar change of basis produced by filt_normalize, with the
/// within-block layer structure (the socle filtration per shift level).
struct FiltNormalization {
    DgModule result;
    ChainMap iso;                                    // input -> result
    ChainMap iso_inverse;                            // result -> input
    std::vector<std::vector<std::vector<int>>> layers; // per shift block, per layer, result generator indices
};

/// Sorts generators by shift (descending, stable) and triangularizes each
/// equal-shift block by iterated kernel extraction. The input must satisfy
/// d(M) ⊂ M A^+ (no scalar entries); throws NotFilterable when a nonempty
/// block has no kernel layer, which signals a non-perfect input.
FiltNormalization filt_normalize(const DgModule& m);

struct TruncationTriangle {
    DgModule lower;     // tau_{<= n}
    DgModule upper;     // tau_{>= n+1}
    ChainMap inclusion; // lower -> M
    ChainMap projection;// M -> upper
};

/// Keeps exactly the generators in degrees <= n (a prefix of the sorted
/// generator list) with the principal submatrix. Requires Filt form.
DgModule tau_le(const DgModule& m, int n);

/// Complementary suffix, generators in degrees >= n.
DgModule tau_ge(const DgModule& m, int n);

TruncationTriangle truncation_triangle(const DgModule& m, int n);

} // namespace dgper
