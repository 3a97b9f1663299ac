#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgper/linalg.hpp"
#include "dgper/scalar.hpp"

namespace dgper {

using VertexId = int;
using BasisId = int;

/// Sparse scalar combination of basis elements, sorted by basis id, no zeros.
using TermList = std::vector<std::pair<BasisId, Scalar>>;

struct BasisElem {
    std::string name;
    int degree = 0;
    VertexId left = 0;
    VertexId right = 0;
};

/// Raw, unvalidated presentation of a graded algebra by structure constants.
/// `products` must contain every pair (b, b') with right(b) = left(b') and
/// deg b + deg b' <= degree_cap. `derivation` maps a basis id to d_A of it.
struct GradedAlgebraData {
    Field field = Field::rationals();
    std::vector<std::string> vertices;
    int degree_cap = 0;
    std::vector<BasisElem> basis;
    std::map<std::pair<BasisId, BasisId>, TermList> products;
    std::optional<std::map<BasisId, TermList>> derivation;
};

class GradedAlgebra;
using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

class AlgebraElement;

/// A positively graded algebra A = ⊕ A^i over an exact field, with A^0
/// spanned by one idempotent per vertex, stored degreewise up to degree_cap,
/// optionally carrying a square-zero degree +1 derivation. Instances are
/// immutable after validation and safe to share across threads.
class GradedAlgebra : public std::enable_shared_from_this<GradedAlgebra> {
public:
    /// Checks every structural axiom exhaustively on the basis (within the
    /// cap) and returns the validated algebra. Throws Error with one of
    /// P1Violation, P2Violation, P3Violation, AssocViolation,
    /// LeibnizViolation, DSquareViolation, CapInconsistent, DegreeMismatch,
    /// VertexMismatch.
    static AlgebraPtr validate(GradedAlgebraData data);

    const Field& field() const { return data_.field; }
    int degree_cap() const { return data_.degree_cap; }
    int vertex_count() const { return static_cast<int>(data_.vertices.size()); }
    const std::vector<std::string>& vertices() const { return data_.vertices; }
    const std::string& vertex_name(VertexId x) const { return data_.vertices[static_cast<std::size_t>(x)]; }
    std::optional<VertexId> vertex_id(const std::string& name) const;

    int basis_count() const { return static_cast<int>(data_.basis.size()); }
    const BasisElem& basis_elem(BasisId b) const { return data_.basis[static_cast<std::size_t>(b)]; }
    const std::vector<BasisElem>& basis() const { return data_.basis; }
    std::optional<BasisId> basis_id(const std::string& name) const;

    /// Idempotent basis id attached to a vertex.
    BasisId idempotent(VertexId x) const { return idempotents_[static_cast<std::size_t>(x)]; }

    bool has_derivation() const { return data_.derivation.has_value(); }
    /// Nonzero derivation: has a derivation table with a nonzero entry.
    bool derivation_is_zero() const;

    /// Ordered basis of the component e_x A^d e_y (input order, possibly
    /// empty). Requires 0 <= d <= degree_cap.
    const std::vector<BasisId>& component_basis(VertexId x, VertexId y, int d) const;
    /// All basis ids of degree d with left vertex x.
    std::vector<BasisId> left_component(VertexId x, int d) const;

    const std::map<std::pair<BasisId, BasisId>, TermList>& products() const { return data_.products; }
    const std::optional<std::map<BasisId, TermList>>& derivation_table() const { return data_.derivation; }

    AlgebraElement zero_element(int degree, VertexId left, VertexId right) const;
    AlgebraElement basis_element(BasisId b) const;
    AlgebraElement unit_at(VertexId x) const; // e_x

    bool same_as(const GradedAlgebra& other) const;

private:
    GradedAlgebra() = default;
    void build_indexes();
    void check_axioms() const;

    GradedAlgebraData data_;
    std::vector<BasisId> idempotents_; // per vertex
    std::map<std::string, BasisId> name_to_id_;
    std::map<std::string, VertexId> vertex_to_id_;
    std::map<std::tuple<VertexId, VertexId, int>, std::vector<BasisId>> components_;
    std::vector<BasisId> empty_component_;
};

/// Homogeneous element of e_x A^d e_y. The zero element is representable in
/// any slot. Elements keep a plain pointer to their algebra; the algebra is
/// kept alive by whoever owns the surrounding module or test fixture.
class AlgebraElement {
public:
    AlgebraElement(const GradedAlgebra* alg, int degree, VertexId left, VertexId right)
        : alg_(alg), degree_(degree), left_(left), right_(right) {}

    const GradedAlgebra* algebra() const { return alg_; }
    int degree() const { return degree_; }
    VertexId left_vertex() const { return left_; }
    VertexId right_vertex() const { return right_; }
    const TermList& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Scalar coeff(BasisId b) const;
    void set_coeff(BasisId b, const Scalar& c); // validates the slot of b

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const;
    AlgebraElement scaled(const Scalar& c) const;
    bool operator==(const AlgebraElement& o) const;
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

    /// Scalar coefficient of the idempotent when degree == 0, else zero.
    Scalar scalar_part() const;

    std::string str() const;

private:
    const GradedAlgebra* alg_;
    int degree_;
    VertexId left_, right_;
    TermList terms_;

    friend AlgebraElement multiply(const AlgebraElement&, const AlgebraElement&);
    friend AlgebraElement apply_derivation(const AlgebraElement&);
};

/// Product in A; requires right(a) = left(b) (VertexMismatch) and
/// deg a + deg b <= cap (CapExceeded).
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

/// d_A(a); zero when the algebra has no derivation table. Requires
/// deg a + 1 <= cap (CapExceeded).
AlgebraElement apply_derivation(const AlgebraElement& a);

} // namespace dgper
