#pragma once

#include <cstdint>

#include "dgper/polyfp.hpp"
#include "dgper/triang.hpp"

namespace dgper {

/// Coordinate vector of an element in a FiniteDimAlgebra basis.
using FdaElement = std::vector<Scalar>;

/// An associative unital algebra of finite dimension over an exact field,
/// given by structure constants.
class FiniteDimAlgebra {
public:
    /// mult[i][j] is the coordinate vector of b_i b_j. Checks associativity
    /// and the unit laws exactly on all basis triples/pairs.
    static FiniteDimAlgebra validate(Field field, std::vector<std::string> labels,
                                     std::vector<std::vector<FdaElement>> mult, FdaElement unit);

    const Field& field() const { return field_; }
    int dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const FdaElement& unit() const { return unit_; }

    FdaElement zero() const { return FdaElement(static_cast<std::size_t>(dim_), Scalar::zero(field_)); }
    FdaElement basis_vec(int i) const;
    FdaElement multiply(const FdaElement& a, const FdaElement& b) const;
    FdaElement add(const FdaElement& a, const FdaElement& b) const;
    FdaElement sub(const FdaElement& a, const FdaElement& b) const;
    FdaElement scale(const FdaElement& a, const Scalar& c) const;
    bool is_zero_elem(const FdaElement& a) const;

    Mat left_mult_matrix(const FdaElement& a) const;

    /// Monic minimal polynomial of a (coefficients ascending).
    Poly minimal_polynomial(const FdaElement& a) const;

    /// Evaluate a polynomial at an algebra element.
    FdaElement eval_poly(const Poly& p, const FdaElement& a) const;

private:
    Field field_ = Field::rationals();
    int dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<FdaElement>> mult_;
    FdaElement unit_;
};

/// End_dgMod(M) with the chain maps realizing each basis element.
struct EndAlgebra {
    FiniteDimAlgebra algebra;
    std::vector<ChainMap> basis_maps;
    DgModule module;

    ChainMap realize(const FdaElement& a) const;
};

EndAlgebra end_algebra(const DgModule& m);

/// Jacobson radical as the kernel of the trace form of the regular
/// representation; valid for char 0 or p > dim (UnsupportedCharacteristic
/// otherwise). The result is re-verified nilpotent.
std::vector<FdaElement> radical_basis(const FiniteDimAlgebra& e);

/// Complete orthogonal set of primitive idempotents summing to 1, certified:
/// lifts a primitive decomposition of E/J through the nilpotent radical by
/// the e -> 3e^2 - 2e^3 iteration and successive orthogonalization, then
/// verifies e_i e_j = delta_ij e_i and sum e_i = 1 exactly. The semisimple
/// quotient step factors minimal polynomials, which is implemented over F_p
/// only; over Q any non-local quotient raises UnsupportedField.
std::vector<FdaElement> primitive_idempotents(const FiniteDimAlgebra& e, std::uint64_t seed = 0);

struct SplitResult {
    DgModule first;  // realizes im e
    DgModule second; // realizes im (1 - e)
    ChainMap incl1, proj1, incl2, proj2;
};

/// Splits M along an exact idempotent chain endomorphism, extracting minimal
/// generators degreewise and solving the differentials exactly; the assembled
/// comparison map first ⊕ second -> M is verified to be an isomorphism.
SplitResult split_idempotent(const DgModule& m, const ChainMap& e);

struct FittingResult {
    int exponent = 0;            // stabilization exponent n <= lambda(M-bar)
    DgModule kernel_part;        // ker f^n
    DgModule image_part;         // im f^n
    ChainMap fitting_idempotent; // projection onto im f^n along ker f^n
    SplitResult split;           // first = image part, second = kernel part
};

/// Fitting decomposition M = ker f^n ⊕ im f^n for a degree-0 chain
/// endomorphism, via the minimal polynomial of f.
FittingResult fitting(const DgModule& m, const ChainMap& f);

enum class SummandCertificate {
    Local,            // End/rad is 1-dimensional
    LocalNonSplit,    // End local with a nontrivial division-algebra quotient
    NoSplittingFound, // uncertified (rationals path)
};

struct Decomposition {
    std::vector<DgModule> summands;
    std::vector<ChainMap> inclusions;  // summand -> M
    std::vector<ChainMap> projections; // M -> summand
    std::vector<SummandCertificate> certificates;
    bool certified = false;
};

/// Krull-Remak-Schmidt decomposition. Over F_p with p > dim End(M) the
/// result is certified (primitive idempotents of End(M), each summand's End
/// verified local). Over Q a best-effort Fitting search runs instead and
/// summands that resist splitting are reported NoSplittingFound.
Decomposition krs_decompose(const DgModule& m, std::uint64_t seed = 0);

/// True iff a degree-0 chain map with invertible scalar part exists. The
/// search tests hom basis elements and seeded random combinations (sound);
/// completeness on a miss goes through certified KRS, so over Q a miss raises
/// UnsupportedField.
bool modules_isomorphic(const DgModule& m, const DgModule& n, std::uint64_t seed = 0);

} // namespace dgper
