#include "cohdof/rational.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using cohdof::frac;
using cohdof::Rational;

namespace {

// Independent reference: reduce a/b with std::gcd on 64-bit values.
std::pair<long long, long long> reduce(long long a, long long b) {
    if (b < 0) a = -a, b = -b;
    long long g = std::gcd(a < 0 ? -a : a, b);
    if (g == 0) return {0, 1};
    return {a / g, b / g};
}

void expect_is(const Rational& r, long long n, long long d) {
    auto [rn, rd] = reduce(n, d);
    EXPECT_EQ(r.num(), rn);
    EXPECT_EQ(r.den(), rd);
}

}  // namespace

TEST(Rational, CanonicalForm) {
    expect_is(Rational(6, 8), 3, 4);
    expect_is(Rational(3, -9), -1, 3);
    expect_is(Rational(0, -5), 0, 1);
    EXPECT_EQ(Rational(-4, -6).str(), "2/3");
}

TEST(Rational, AlwaysSlashForm) {
    EXPECT_EQ(Rational(3).str(), "3/1");
    EXPECT_EQ(Rational(0).str(), "0/1");
    EXPECT_EQ(frac(17, 24).str(), "17/24");
}

TEST(Rational, ParseRoundTrip) {
    EXPECT_EQ(Rational::parse("17/24"), frac(17, 24));
    EXPECT_EQ(Rational::parse("-10/4"), frac(-5, 2));
    EXPECT_EQ(Rational::parse("7"), Rational(7));
    EXPECT_THROW(Rational::parse("1/"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("a/2"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
}

TEST(Rational, ArithmeticMatchesReference) {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 60);
    for (int i = 0; i < 2000; ++i) {
        long long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
        expect_is(Rational(a, b) + Rational(c, d), a * d + c * b, b * d);
        expect_is(Rational(a, b) - Rational(c, d), a * d - c * b, b * d);
        expect_is(Rational(a, b) * Rational(c, d), a * c, b * d);
        if (c != 0) expect_is(Rational(a, b) / Rational(c, d), a * d, b * c);
        EXPECT_EQ(Rational(a, b) < Rational(c, d), a * d < c * b);
    }
}

TEST(Rational, DivisionByZeroThrows) {
    EXPECT_THROW(frac(1, 2) / Rational(0), std::domain_error);
    EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, NoOverflowOnLongProducts) {
    Rational r(1);
    for (int t = 2; t < 60; ++t) r *= Rational(t, t + 1);
    EXPECT_EQ(r, frac(2, 60));
    Rational big(1);
    for (int i = 0; i < 40; ++i) big *= Rational(1, 97);
    EXPECT_EQ((big * Rational(97)).den(), cohdof::BigInt(1) * boost::multiprecision::pow(cohdof::BigInt(97), 39));
}

TEST(Rational, MinMaxAbs) {
    EXPECT_EQ(cohdof::min(frac(1, 3), frac(1, 4)), frac(1, 4));
    EXPECT_EQ(cohdof::max(frac(1, 3), frac(1, 4)), frac(1, 3));
    EXPECT_EQ(cohdof::abs(frac(-2, 3)), frac(2, 3));
    EXPECT_DOUBLE_EQ(frac(3, 8).to_double(), 0.375);
}
