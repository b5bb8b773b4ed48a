#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

#include "cgauss/errors.hpp"

namespace cgauss {

/// Index n into an approximation sequence; the associated error bound is 2^-n.
class PrecisionIndex {
public:
    PrecisionIndex(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("precision index must be >= 0");
    }
    int value() const { return n_; }

private:
    int n_;
};

/// Arbitrary-precision rational, always stored normalized:
/// denominator > 0 and gcd(|numerator|, denominator) = 1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den);
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(mpq_class v);

    /// Accepts "p/q" or "p", optional sign on p only.
    static Rational parse(std::string_view text);

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    Rational abs() const;
    Rational operator-() const;

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    /// Total order: -1, 0 or +1.
    int cmp(const Rational& o) const { return ::cmp(v_, o.v_); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    /// "p/q", or just "p" when the denominator is 1.
    std::string str() const;

    /// max(bits of |numerator|, bits of denominator).
    std::size_t bit_size() const;

    double to_double() const { return v_.get_d(); }

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

/// Exactly 2^-n.
Rational dyadic(PrecisionIndex n);

/// Exactly 2^e for any integer e.
Rational pow2(int e);

} // namespace cgauss
