#pragma once

#include "dgper/heart.hpp"

namespace dgper {

/// One generator of a resolution term P_{-i} = ⊕ {-deg} e_x A.
struct ResTermGen {
    VertexId vertex = 0;
    int degree = 0; // generation degree
};

/// Minimal graded projective resolution of A^0 = A / A^+ as a right
/// A-module, computed degreewise up to a degree window. terms[i] describes
/// P_{-i}; diffs[i] (i >= 1) is the matrix of d_{-i} : P_{-i} -> P_{-i+1}
/// with homogeneous entries in A^+. P_0 = ⊕_x e_x A with the augmentation
/// onto A^0 left implicit.
struct Resolution {
    AlgebraPtr algebra;
    std::vector<std::vector<ResTermGen>> terms;
    std::vector<ElementMatrix> diffs; // diffs[0] unused
    bool finite = false;              // a syzygy step came back empty inside the window
    int degree_window = 0;
};

/// Computes the minimal resolution: at each step the syzygy kernel is found
/// degreewise by exact linear algebra and minimal generators are extracted
/// modulo decomposables. Requires d_A = 0 (NonzeroDerivation) and
/// degree_cap <= the algebra's cap (DegreeCapExceeded).
Resolution minimal_resolution(const AlgebraPtr& alg, int length_cap, int degree_cap);

/// Independent re-check: differential entries in A^+ (minimality) and
/// exactness ker(d_{-i+1}) = im(d_{-i}) degreewise inside the window.
/// Throws VerificationFailed when the resolution is broken.
void verify_resolution(const Resolution& res);

struct KoszulCheck {
    bool koszul = false;
    bool up_to_window_only = false; // verdict limited because the resolution was cut off
    int offending_term = -1;        // first i with P_{-i} not generated purely in degree i
    std::vector<int> offending_degrees;
};

KoszulCheck is_koszul(const Resolution& res);

/// K(A) = ⊕_n {n} P_{-n} with differential (-1)^n d_{-n}: a dgFlag object.
/// Requires a finite Koszul resolution (NotKoszul / InfiniteResolution).
DgModule koszul_module(const Resolution& res);

/// The Koszul dual ring E(A) = Ext^•(A^0, A^0), realized as the diagonal
/// cocycle spaces E^i = ker(R_{-i}^i -> R_{-i}^{i+1}) of the Hom complex of
/// the resolution, with the Yoneda product by composition.
struct ExtAlgebra {
    FiniteDimAlgebra algebra;
    std::vector<int> degree_of_basis;
    std::vector<int> graded_dims;
    /// basis element b, component s: scalar-matrix-free representation as a
    /// map of resolution terms P_{-s} -> {-i} P_{-s+i}
    std::vector<std::vector<ElementMatrix>> families;
};

ExtAlgebra ext_algebra(const Resolution& res);

struct KoszulDualityReport {
    std::vector<int> ext_dims;
    std::vector<int> end_dims;
    bool dims_match = false;
    bool correspondence_bijective = false;
    bool products_match = false;
    bool k_injective = false;
    bool contains_algebra = false;
    bool nonnegatively_graded = false;
    bool verified = false;
    int resolution_length = 0;
    DgModule koszul_mod;
};

/// Computes E(A) and End_♥(K(A)), runs the basis-level correspondence
/// (a cocycle family maps to the chain endomorphism with the same component
/// matrices) and verifies it is an isomorphism of graded algebras. Throws
/// VerificationFailed if any exact check fails.
KoszulDualityReport verify_koszul_duality(const AlgebraPtr& alg, int length_cap, int degree_cap);

} // namespace dgper
