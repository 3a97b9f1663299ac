#pragma once

#include <cstdint>
#include <vector>

#include "dgper/scalar.hpp"

namespace dgper {

/// Dense univariate polynomial, coefficients ascending, no trailing zeros.
using Poly = std::vector<Scalar>;

Poly poly_trim(Poly p);
int poly_deg(const Poly& p); // -1 for the zero polynomial
Poly poly_make_monic(const Poly& p);
Poly poly_add(const Poly& a, const Poly& b, const Field& k);
Poly poly_sub(const Poly& a, const Poly& b, const Field& k);
Poly poly_mul(const Poly& a, const Poly& b, const Field& k);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b, const Field& k);
Poly poly_mod(const Poly& a, const Poly& b, const Field& k);
Poly poly_gcd(Poly a, Poly b, const Field& k); // monic
/// g = gcd(a,b) = s a + t b with g monic.
struct PolyGcdExt {
    Poly g, s, t;
};
PolyGcdExt poly_gcdext(const Poly& a, const Poly& b, const Field& k);
Poly poly_derivative(const Poly& a, const Field& k);
Poly poly_powmod(const Poly& base, const mpz_class& exp, const Poly& mod, const Field& k);

/// Monic irreducible factors with multiplicity, over a prime field.
/// Deterministic for a fixed seed (Cantor-Zassenhaus random splits draw from
/// a seeded generator). Factors sorted by (degree, coefficient sequence).
struct PolyFactor {
    Poly factor;
    int multiplicity;
};
std::vector<PolyFactor> factor_poly_fp(const Poly& f, std::uint64_t seed = 0);

} // namespace dgper
