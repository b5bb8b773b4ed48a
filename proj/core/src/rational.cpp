#include "cgauss/rational.hpp"

#include <cctype>

namespace cgauss {

Rational::Rational(long num, long den) {
    if (den == 0) throw DivisionByZero();
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0) throw DivisionByZero();
    v_ = mpq_class(num);
    v_ /= mpq_class(den);
}

Rational::Rational(mpq_class v) : v_(std::move(v)) {
    v_.canonicalize();
}

Rational Rational::abs() const {
    return Rational(mpq_class(::abs(v_)));
}

Rational Rational::operator-() const {
    return Rational(mpq_class(-v_));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DivisionByZero();
    return Rational(mpq_class(a.v_ / b.v_));
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw ParseError("empty rational literal");

    std::string_view num = s;
    std::string_view den = "1";
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        num = trim(s.substr(0, slash));
        den = trim(s.substr(slash + 1));
    }

    bool neg = false;
    if (!num.empty() && (num.front() == '+' || num.front() == '-')) {
        neg = num.front() == '-';
        num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den))
        throw ParseError("malformed rational literal: \"" + std::string(text) + "\"");

    mpz_class p(std::string(num), 10);
    mpz_class q(std::string(den), 10);
    if (sgn(q) == 0) throw ParseError("rational literal with zero denominator");
    if (neg) p = -p;
    return Rational(p, q);
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::size_t Rational::bit_size() const {
    std::size_t nb = mpz_sizeinbase(v_.get_num().get_mpz_t(), 2);
    std::size_t db = mpz_sizeinbase(v_.get_den().get_mpz_t(), 2);
    return nb > db ? nb : db;
}

Rational dyadic(PrecisionIndex n) {
    return pow2(-n.value());
}

Rational pow2(int e) {
    mpz_class p = 1;
    if (e >= 0) {
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned>(e));
        return Rational(p, mpz_class(1));
    }
    mpz_class q = 1;
    mpz_mul_2exp(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned>(-e));
    return Rational(mpz_class(1), q);
}

} // namespace cgauss
