#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "dgper/error.hpp"

namespace dgper {

/// Coefficient field: the rationals or a prime field F_p. All arithmetic in
/// the engine is exact; there is no floating point anywhere.
class Field {
public:
    static Field rationals() { return Field(0); }

    /// Throws Error(ParseError) unless p is prime (and fits in 32 bits).
    static Field prime(std::uint64_t p);

    /// Accepts "Q" or "F<p>", e.g. "F7".
    static Field parse(const std::string& text);

    bool is_rationals() const { return p_ == 0; }
    bool is_prime_field() const { return p_ != 0; }
    std::uint64_t characteristic() const { return p_; }

    std::string str() const;

    bool operator==(const Field& other) const { return p_ == other.p_; }
    bool operator!=(const Field& other) const { return p_ != other.p_; }

private:
    explicit Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_;
};

/// An exact field element. Carries its field so that mixed-field arithmetic
/// is caught immediately (as a logic error, not a domain error).
class Scalar {
public:
    Scalar() : field_(Field::rationals()) {}

    static Scalar zero(const Field& f);
    static Scalar one(const Field& f);
    static Scalar from_int(const Field& f, long long n);

    /// Parses "3", "-2/7", ... rejecting malformed text and zero denominators
    /// (including denominators divisible by p over F_p) with ParseError.
    static Scalar parse(const Field& f, const std::string& text);

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;

    /// Multiplicative inverse; the caller must not pass zero.
    Scalar inverse() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical decimal form: lowest terms over Q, representative in [0,p)
    /// over F_p.
    std::string str() const;

    /// The representative in [0, p); only meaningful over a prime field.
    std::uint64_t residue() const { return r_; }

private:
    explicit Scalar(const Field& f) : field_(f) {}
    void check_same_field(const Scalar& o) const;

    Field field_;
    std::uint64_t r_ = 0; // F_p residue
    mpq_class q_;         // rational value
};

} // namespace dgper
