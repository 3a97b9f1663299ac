#include "dgper/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace dgper {

namespace {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    // extended Euclid; a must be nonzero mod p
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::logic_error("invmod: element not invertible");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

struct ParsedFraction {
    bool negative = false;
    std::string num;
    std::string den; // empty when no '/'
};

ParsedFraction split_fraction(const std::string& text) {
    ParsedFraction out;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        out.negative = text[pos] == '-';
        ++pos;
    }
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw Error(ErrorCode::ParseError, "malformed scalar '" + text + "'");
    out.num = text.substr(start, pos - start);
    if (pos == text.size()) return out;
    if (text[pos] != '/') throw Error(ErrorCode::ParseError, "malformed scalar '" + text + "'");
    ++pos;
    start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || pos != text.size())
        throw Error(ErrorCode::ParseError, "malformed scalar '" + text + "'");
    out.den = text.substr(start, pos - start);
    return out;
}

std::uint64_t decimal_mod(const std::string& digits, std::uint64_t p) {
    std::uint64_t r = 0;
    for (char c : digits) r = (mulmod(r, 10, p) + static_cast<std::uint64_t>(c - '0')) % p;
    return r;
}

} // namespace

Field Field::prime(std::uint64_t p) {
    if (p == 0 || p > 0x7fffffffULL || !is_prime_u64(p))
        throw Error(ErrorCode::ParseError, "field characteristic must be a prime < 2^31, got " + std::to_string(p));
    return Field(p);
}

Field Field::parse(const std::string& text) {
    if (text == "Q") return rationals();
    if (text.size() >= 2 && text[0] == 'F') {
        std::uint64_t p = 0;
        for (std::size_t i = 1; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw Error(ErrorCode::ParseError, "bad field spec '" + text + "'");
            p = p * 10 + static_cast<std::uint64_t>(text[i] - '0');
            if (p > 0x7fffffffULL) throw Error(ErrorCode::ParseError, "field characteristic too large in '" + text + "'");
        }
        return prime(p);
    }
    throw Error(ErrorCode::ParseError, "bad field spec '" + text + "' (expected \"Q\" or \"F<p>\")");
}

std::string Field::str() const {
    return is_rationals() ? "Q" : "F" + std::to_string(p_);
}

Scalar Scalar::zero(const Field& f) { return Scalar(f); }

Scalar Scalar::one(const Field& f) {
    Scalar s(f);
    if (f.is_rationals())
        s.q_ = 1;
    else
        s.r_ = 1 % f.characteristic();
    return s;
}

Scalar Scalar::from_int(const Field& f, long long n) {
    Scalar s(f);
    if (f.is_rationals()) {
        s.q_ = mpq_class(static_cast<long>(n));
    } else {
        std::uint64_t p = f.characteristic();
        std::int64_t r = static_cast<std::int64_t>(n % static_cast<long long>(p));
        if (r < 0) r += static_cast<std::int64_t>(p);
        s.r_ = static_cast<std::uint64_t>(r);
    }
    return s;
}

Scalar Scalar::parse(const Field& f, const std::string& text) {
    ParsedFraction frac = split_fraction(text);
    if (!frac.den.empty()) {
        bool all_zero = frac.den.find_first_not_of('0') == std::string::npos;
        if (all_zero) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    }
    Scalar s(f);
    if (f.is_rationals()) {
        mpz_class num(frac.num, 10);
        if (frac.negative) num = -num;
        mpz_class den = frac.den.empty() ? mpz_class(1) : mpz_class(frac.den, 10);
        s.q_ = mpq_class(num, den);
        s.q_.canonicalize();
    } else {
        std::uint64_t p = f.characteristic();
        std::uint64_t num = decimal_mod(frac.num, p);
        if (frac.negative) num = (p - num) % p;
        if (!frac.den.empty()) {
            std::uint64_t den = decimal_mod(frac.den, p);
            if (den == 0)
                throw Error(ErrorCode::ParseError, "denominator not invertible mod " + std::to_string(p) + " in '" + text + "'");
            num = mulmod(num, invmod(den, p), p);
        }
        s.r_ = num;
    }
    return s;
}

bool Scalar::is_zero() const {
    return field_.is_rationals() ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const {
    return field_.is_rationals() ? q_ == 1 : r_ == 1 % field_.characteristic();
}

void Scalar::check_same_field(const Scalar& o) const {
    if (field_ != o.field_) throw std::logic_error("scalar arithmetic across different fields");
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    Scalar s(field_);
    if (field_.is_rationals())
        s.q_ = q_ + o.q_;
    else
        s.r_ = (r_ + o.r_) % field_.characteristic();
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same_field(o);
    Scalar s(field_);
    if (field_.is_rationals()) {
        s.q_ = q_ - o.q_;
    } else {
        std::uint64_t p = field_.characteristic();
        s.r_ = (r_ + p - o.r_) % p;
    }
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    Scalar s(field_);
    if (field_.is_rationals())
        s.q_ = q_ * o.q_;
    else
        s.r_ = mulmod(r_, o.r_, field_.characteristic());
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s(field_);
    if (field_.is_rationals()) {
        s.q_ = -q_;
    } else {
        std::uint64_t p = field_.characteristic();
        s.r_ = (p - r_) % p;
    }
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::logic_error("inverse of zero scalar");
    Scalar s(field_);
    if (field_.is_rationals())
        s.q_ = 1 / q_;
    else
        s.r_ = invmod(r_, field_.characteristic());
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    check_same_field(o);
    return field_.is_rationals() ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::str() const {
    if (field_.is_rationals()) return q_.get_str();
    return std::to_string(r_);
}

} // namespace dgper
