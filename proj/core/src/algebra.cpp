#include "dgper/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace dgper {

namespace {

void add_term(TermList& terms, BasisId b, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(terms.begin(), terms.end(), b,
                               [](const std::pair<BasisId, Scalar>& t, BasisId id) { return t.first < id; });
    if (it != terms.end() && it->first == b) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms.erase(it);
    } else {
        terms.insert(it, {b, c});
    }
}

} // namespace

std::optional<VertexId> GradedAlgebra::vertex_id(const std::string& name) const {
    auto it = vertex_to_id_.find(name);
    if (it == vertex_to_id_.end()) return std::nullopt;
    return it->second;
}

std::optional<BasisId> GradedAlgebra::basis_id(const std::string& name) const {
    auto it = name_to_id_.find(name);
    if (it == name_to_id_.end()) return std::nullopt;
    return it->second;
}

bool GradedAlgebra::derivation_is_zero() const {
    if (!data_.derivation) return true;
    for (const auto& [b, t] : *data_.derivation)
        if (!t.empty()) return false;
    return true;
}

const std::vector<BasisId>& GradedAlgebra::component_basis(VertexId x, VertexId y, int d) const {
    if (d < 0 || d > data_.degree_cap)
        throw Error(ErrorCode::CapExceeded,
                    "component degree " + std::to_string(d) + " outside [0, " + std::to_string(data_.degree_cap) + "]");
    auto it = components_.find({x, y, d});
    if (it == components_.end()) return empty_component_;
    return it->second;
}

std::vector<BasisId> GradedAlgebra::left_component(VertexId x, int d) const {
    std::vector<BasisId> out;
    for (VertexId y = 0; y < vertex_count(); ++y) {
        const std::vector<BasisId>& comp = component_basis(x, y, d);
        out.insert(out.end(), comp.begin(), comp.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

AlgebraElement GradedAlgebra::zero_element(int degree, VertexId left, VertexId right) const {
    return AlgebraElement(this, degree, left, right);
}

AlgebraElement GradedAlgebra::basis_element(BasisId b) const {
    const BasisElem& be = basis_elem(b);
    AlgebraElement e(this, be.degree, be.left, be.right);
    e.set_coeff(b, Scalar::one(field()));
    return e;
}

AlgebraElement GradedAlgebra::unit_at(VertexId x) const { return basis_element(idempotent(x)); }

bool GradedAlgebra::same_as(const GradedAlgebra& other) const {
    if (this == &other) return true;
    if (data_.field != other.data_.field || data_.degree_cap != other.data_.degree_cap) return false;
    if (data_.vertices != other.data_.vertices) return false;
    if (data_.basis.size() != other.data_.basis.size()) return false;
    for (std::size_t i = 0; i < data_.basis.size(); ++i) {
        const BasisElem& a = data_.basis[i];
        const BasisElem& b = other.data_.basis[i];
        if (a.name != b.name || a.degree != b.degree || a.left != b.left || a.right != b.right) return false;
    }
    return data_.products == other.data_.products && data_.derivation == other.data_.derivation;
}

void GradedAlgebra::build_indexes() {
    for (std::size_t i = 0; i < data_.vertices.size(); ++i) {
        if (vertex_to_id_.count(data_.vertices[i]))
            throw Error(ErrorCode::ValidationError, "duplicate vertex name '" + data_.vertices[i] + "'");
        vertex_to_id_[data_.vertices[i]] = static_cast<VertexId>(i);
    }
    for (std::size_t i = 0; i < data_.basis.size(); ++i) {
        const BasisElem& b = data_.basis[i];
        if (name_to_id_.count(b.name))
            throw Error(ErrorCode::ValidationError, "duplicate basis name '" + b.name + "'");
        name_to_id_[b.name] = static_cast<BasisId>(i);
        if (b.left < 0 || b.left >= vertex_count() || b.right < 0 || b.right >= vertex_count())
            throw Error(ErrorCode::VertexMismatch, "basis element '" + b.name + "' references an unknown vertex");
        if (b.degree > data_.degree_cap)
            throw Error(ErrorCode::CapInconsistent, "basis element '" + b.name + "' has degree above the cap");
        components_[{b.left, b.right, b.degree}].push_back(static_cast<BasisId>(i));
    }
    // degree-0 layer must be exactly one idempotent per vertex
    idempotents_.assign(data_.vertices.size(), -1);
    for (std::size_t i = 0; i < data_.basis.size(); ++i) {
        const BasisElem& b = data_.basis[i];
        if (b.degree != 0) continue;
        if (b.left != b.right)
            throw Error(ErrorCode::P2Violation, "degree-0 basis element '" + b.name + "' joins distinct vertices");
        if (idempotents_[static_cast<std::size_t>(b.left)] != -1)
            throw Error(ErrorCode::P2Violation, "two degree-0 basis elements at vertex '" + vertex_name(b.left) + "'");
        idempotents_[static_cast<std::size_t>(b.left)] = static_cast<BasisId>(i);
    }
    for (std::size_t x = 0; x < idempotents_.size(); ++x)
        if (idempotents_[x] == -1)
            throw Error(ErrorCode::P2Violation, "no idempotent basis element at vertex '" + data_.vertices[x] + "'");
}

void GradedAlgebra::check_axioms() const {
    const Field& k = data_.field;
    const int cap = data_.degree_cap;
    const int n = basis_count();

    // (P1)
    for (const BasisElem& b : data_.basis)
        if (b.degree < 0)
            throw Error(ErrorCode::P1Violation, "basis element '" + b.name + "' has negative degree");

    // product table completeness and typing
    for (BasisId i = 0; i < n; ++i) {
        const BasisElem& bi = basis_elem(i);
        for (BasisId j = 0; j < n; ++j) {
            const BasisElem& bj = basis_elem(j);
            bool composable = bi.right == bj.left && bi.degree + bj.degree <= cap;
            auto it = data_.products.find({i, j});
            if (!composable) {
                if (it != data_.products.end() && !it->second.empty())
                    throw Error(ErrorCode::VertexMismatch,
                                "product table has an entry for the non-composable pair ('" + bi.name + "', '" + bj.name + "')");
                continue;
            }
            if (it == data_.products.end())
                throw Error(ErrorCode::CapInconsistent,
                            "product table is missing the in-cap pair ('" + bi.name + "', '" + bj.name + "')");
            for (const auto& [b, c] : it->second) {
                if (c.field() != k) throw Error(ErrorCode::ValidationError, "product coefficient in the wrong field");
                if (b < 0 || b >= n) throw Error(ErrorCode::ValidationError, "product term references an unknown basis id");
                const BasisElem& bt = basis_elem(b);
                if (bt.degree != bi.degree + bj.degree)
                    throw Error(ErrorCode::DegreeMismatch,
                                "product of '" + bi.name + "' and '" + bj.name + "' has a term of wrong degree");
                if (bt.left != bi.left || bt.right != bj.right)
                    throw Error(ErrorCode::VertexMismatch,
                                "product of '" + bi.name + "' and '" + bj.name + "' has a term with wrong vertices");
            }
        }
    }

    // (P2): e_x e_y = delta_{xy} e_x
    for (VertexId x = 0; x < vertex_count(); ++x) {
        for (VertexId y = 0; y < vertex_count(); ++y) {
            if (x != y) continue; // e_x e_y has mismatched inner vertex unless x = y, hence absent
            AlgebraElement p = multiply(unit_at(x), unit_at(y));
            AlgebraElement expect = unit_at(x);
            if (p != expect)
                throw Error(ErrorCode::P2Violation, "e_" + vertex_name(x) + " is not idempotent");
        }
    }

    // unit laws e_left b = b = b e_right
    for (BasisId i = 0; i < n; ++i) {
        AlgebraElement b = basis_element(i);
        if (multiply(unit_at(basis_elem(i).left), b) != b || multiply(b, unit_at(basis_elem(i).right)) != b)
            throw Error(ErrorCode::AssocViolation, "unit law fails on basis element '" + basis_elem(i).name + "'");
    }

    // associativity on all in-cap composable triples
    for (BasisId i = 0; i < n; ++i)
        for (BasisId j = 0; j < n; ++j) {
            const BasisElem& bi = basis_elem(i);
            const BasisElem& bj = basis_elem(j);
            if (bi.right != bj.left) continue;
            for (BasisId l = 0; l < n; ++l) {
                const BasisElem& bl = basis_elem(l);
                if (bj.right != bl.left) continue;
                if (bi.degree + bj.degree + bl.degree > cap) continue;
                AlgebraElement left = multiply(multiply(basis_element(i), basis_element(j)), basis_element(l));
                AlgebraElement right = multiply(basis_element(i), multiply(basis_element(j), basis_element(l)));
                if (left != right)
                    throw Error(ErrorCode::AssocViolation,
                                "associativity fails on ('" + bi.name + "', '" + bj.name + "', '" + bl.name + "')");
            }
        }

    if (data_.derivation) {
        // typing of the table
        for (const auto& [b, t] : *data_.derivation) {
            if (b < 0 || b >= n) throw Error(ErrorCode::ValidationError, "derivation table references an unknown basis id");
            const BasisElem& bb = basis_elem(b);
            if (bb.degree + 1 > cap && !t.empty())
                throw Error(ErrorCode::CapInconsistent, "derivation of '" + bb.name + "' lands above the cap");
            for (const auto& [tb, c] : t) {
                if (c.field() != k) throw Error(ErrorCode::ValidationError, "derivation coefficient in the wrong field");
                const BasisElem& bt = basis_elem(tb);
                if (bt.degree != bb.degree + 1)
                    throw Error(ErrorCode::DegreeMismatch, "derivation of '" + bb.name + "' has a term of wrong degree");
                if (bt.left != bb.left || bt.right != bb.right)
                    throw Error(ErrorCode::VertexMismatch, "derivation of '" + bb.name + "' has a term with wrong vertices");
            }
        }
        // (P3)
        for (VertexId x = 0; x < vertex_count(); ++x) {
            AlgebraElement d = apply_derivation(unit_at(x));
            if (!d.is_zero())
                throw Error(ErrorCode::P3Violation, "derivation is nonzero on e_" + vertex_name(x));
        }
        // graded Leibniz rule on basis pairs within cap
        for (BasisId i = 0; i < n; ++i)
            for (BasisId j = 0; j < n; ++j) {
                const BasisElem& bi = basis_elem(i);
                const BasisElem& bj = basis_elem(j);
                if (bi.right != bj.left) continue;
                if (bi.degree + bj.degree + 1 > cap) continue;
                AlgebraElement lhs = apply_derivation(multiply(basis_element(i), basis_element(j)));
                AlgebraElement rhs = multiply(apply_derivation(basis_element(i)), basis_element(j));
                AlgebraElement sign_term = multiply(basis_element(i), apply_derivation(basis_element(j)));
                if (bi.degree % 2 != 0) sign_term = -sign_term;
                rhs = rhs + sign_term;
                if (lhs != rhs)
                    throw Error(ErrorCode::LeibnizViolation,
                                "Leibniz rule fails on ('" + bi.name + "', '" + bj.name + "')");
            }
        // d o d = 0
        for (BasisId i = 0; i < n; ++i) {
            if (basis_elem(i).degree + 2 > cap) continue;
            AlgebraElement dd = apply_derivation(apply_derivation(basis_element(i)));
            if (!dd.is_zero())
                throw Error(ErrorCode::DSquareViolation, "d_A squared is nonzero on '" + basis_elem(i).name + "'");
        }
    }
}

AlgebraPtr GradedAlgebra::validate(GradedAlgebraData data) {
    std::shared_ptr<GradedAlgebra> alg(new GradedAlgebra());
    alg->data_ = std::move(data);
    alg->build_indexes();
    alg->check_axioms();
    return alg;
}

Scalar AlgebraElement::coeff(BasisId b) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), b,
                               [](const std::pair<BasisId, Scalar>& t, BasisId id) { return t.first < id; });
    if (it != terms_.end() && it->first == b) return it->second;
    return Scalar::zero(alg_->field());
}

void AlgebraElement::set_coeff(BasisId b, const Scalar& c) {
    const BasisElem& be = alg_->basis_elem(b);
    if (be.degree != degree_ || be.left != left_ || be.right != right_)
        throw std::logic_error("basis element '" + be.name + "' does not fit this element slot");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), b,
                               [](const std::pair<BasisId, Scalar>& t, BasisId id) { return t.first < id; });
    if (it != terms_.end() && it->first == b) {
        if (c.is_zero())
            terms_.erase(it);
        else
            it->second = c;
    } else if (!c.is_zero()) {
        terms_.insert(it, {b, c});
    }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    if (alg_ != o.alg_ || degree_ != o.degree_ || left_ != o.left_ || right_ != o.right_)
        throw std::logic_error("adding elements from different slots");
    AlgebraElement out(alg_, degree_, left_, right_);
    out.terms_ = terms_;
    for (const auto& [b, c] : o.terms_) add_term(out.terms_, b, c);
    return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const { return *this + (-o); }

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement out(alg_, degree_, left_, right_);
    for (const auto& [b, c] : terms_) out.terms_.push_back({b, -c});
    return out;
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
    AlgebraElement out(alg_, degree_, left_, right_);
    if (c.is_zero()) return out;
    for (const auto& [b, s] : terms_) out.terms_.push_back({b, s * c});
    return out;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
    return degree_ == o.degree_ && left_ == o.left_ && right_ == o.right_ && terms_ == o.terms_;
}

Scalar AlgebraElement::scalar_part() const {
    if (degree_ != 0 || left_ != right_) return Scalar::zero(alg_->field());
    return coeff(alg_->idempotent(left_));
}

std::string AlgebraElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (!c.is_one()) os << c.str() << "*";
        os << alg_->basis_elem(b).name;
    }
    return os.str();
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    const GradedAlgebra* alg = a.alg_;
    if (a.right_vertex() != b.left_vertex())
        throw Error(ErrorCode::VertexMismatch,
                    "product needs matching inner vertex, got '" + alg->vertex_name(a.right_vertex()) + "' vs '" +
                        alg->vertex_name(b.left_vertex()) + "'");
    int d = a.degree() + b.degree();
    if (d > alg->degree_cap())
        throw Error(ErrorCode::CapExceeded,
                    "product degree " + std::to_string(d) + " exceeds the cap " + std::to_string(alg->degree_cap()));
    AlgebraElement out(alg, d, a.left_vertex(), b.right_vertex());
    for (const auto& [i, ci] : a.terms()) {
        for (const auto& [j, cj] : b.terms()) {
            auto it = alg->products().find({i, j});
            if (it == alg->products().end()) continue;
            Scalar f = ci * cj;
            for (const auto& [t, ct] : it->second) add_term(out.terms_, t, ct * f);
        }
    }
    return out;
}

AlgebraElement apply_derivation(const AlgebraElement& a) {
    const GradedAlgebra* alg = a.alg_;
    if (a.degree() + 1 > alg->degree_cap())
        throw Error(ErrorCode::CapExceeded, "derivation lands above the cap");
    AlgebraElement out(alg, a.degree() + 1, a.left_vertex(), a.right_vertex());
    if (!alg->has_derivation()) return out;
    const auto& table = *alg->derivation_table();
    for (const auto& [b, c] : a.terms()) {
        auto it = table.find(b);
        if (it == table.end()) continue;
        for (const auto& [t, ct] : it->second) add_term(out.terms_, t, ct * c);
    }
    return out;
}

} // namespace dgper
