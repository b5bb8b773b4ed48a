#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace cgauss;
using cgauss::testing::R;

TEST_SUITE_BEGIN("rational");

TEST_CASE("exact fraction arithmetic") {
    CHECK(R("1/2") + R("1/3") == R("5/6"));
    CHECK(R("0/1") + R("7/5") == R("7/5"));
    CHECK(R("1/3") + R("-1/3") == R("0"));
    CHECK(R("2/3") * R("3/2") == R("1"));
    CHECK(R("-5/4").abs() == R("5/4"));
    CHECK(R("1/3").cmp(R("1/2")) < 0);
    CHECK(R("7/2") - R("1/2") == R("3"));
    CHECK(R("5") / R("2") == R("5/2"));
}

TEST_CASE("division by zero") {
    CHECK_THROWS_AS(R("1") / R("0"), DivisionByZero);
    CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
}

TEST_CASE("dyadic") {
    CHECK(dyadic(0) == R("1"));
    CHECK(dyadic(3) == R("1/8"));
    CHECK(dyadic(10) == R("1/1024"));
    CHECK(pow2(5) == R("32"));
    CHECK_THROWS_AS(PrecisionIndex(-1), std::invalid_argument);
}

TEST_CASE("stored normalized") {
    Rational q(6, -4);
    CHECK(q.numerator() == -3);
    CHECK(q.denominator() == 2);

    // Re-normalizing changes nothing.
    Rational renorm(q.numerator(), q.denominator());
    CHECK(renorm == q);
    CHECK(renorm.str() == q.str());
}

TEST_CASE("parse and print round-trip") {
    CHECK(R("-7/2").str() == "-7/2");
    CHECK(R("+3/6").str() == "1/2");
    CHECK(R("5").str() == "5");
    CHECK(R("5/1").str() == "5");
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("a/b"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/-2"), ParseError);
    CHECK_THROWS_AS(Rational::parse(""), ParseError);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Rational q = testing::random_fraction(rng, 1'000'000, 1'000'000);
        CHECK(Rational::parse(q.str()) == q);
    }
}

TEST_CASE("field laws on random fractions") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        Rational a = testing::random_fraction(rng, 4096, 4096);
        Rational b = testing::random_fraction(rng, 4096, 4096);
        Rational c = testing::random_fraction(rng, 4096, 4096);
        CHECK(a + b == b + a);
        CHECK(a * (b + c) == a * b + a * c);
        // cmp agrees with the sign of the difference
        CHECK(a.cmp(b) == (a - b).sign());
    }
}

TEST_CASE("bit size") {
    CHECK(R("0").bit_size() == 1);
    CHECK(R("1").bit_size() == 1);
    CHECK(R("255/256").bit_size() == 9);
}

TEST_SUITE_END();
