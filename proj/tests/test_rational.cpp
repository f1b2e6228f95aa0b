#include <catch_amalgamated.hpp>

#include <limits>
#include <stdexcept>

#include "binsize/rational.hpp"

using binsize::Rational;

TEST_CASE("parse decimal, exponent and ratio forms") {
  CHECK(Rational::parse("0.1") == Rational(1, 10));
  CHECK(Rational::parse("0.05") == Rational(1, 20));
  CHECK(Rational::parse("5e-2") == Rational(1, 20));
  CHECK(Rational::parse("2.5E+1") == Rational(25));
  CHECK(Rational::parse("1/3") == Rational(1, 3));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("0.001") == Rational(1, 1000));
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS(Rational::parse(""));
}

TEST_CASE("values are reduced with positive denominator") {
  const Rational r(6, -8);
  CHECK(r.num() == -3);
  CHECK(r.den() == 4);
  CHECK(r.str() == "-3/4");
  CHECK(Rational(4, 2).str() == "2");
}

TEST_CASE("decimal doubles map to their short decimal") {
  CHECK(Rational::from_decimal_double(0.1) == Rational(1, 10));
  CHECK(Rational::from_decimal_double(0.005) == Rational(1, 200));
  CHECK(Rational::from_decimal_double(0.001) == Rational(1, 1000));
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(0.1).to_double() == 0.1);
}

TEST_CASE("arithmetic and ordering") {
  const Rational a(1, 10), b(1, 20);
  CHECK(a + b == Rational(3, 20));
  CHECK(a - b == Rational(1, 20));
  CHECK(a * b == Rational(1, 200));
  CHECK(a / b == Rational(2));
  CHECK(b < a);
  CHECK(-a < b);
  CHECK(Rational(1, 3) > Rational(333, 1000));
}

TEST_CASE("floor and ceil of products are exact on boundaries") {
  // 10 * (0.3 - 0.1) is exactly 2: the window at p = 0.3 must be [3, 3].
  const Rational p(3, 10), eps(1, 10);
  CHECK(binsize::floor_mul(10, p - eps) == 2);
  CHECK(binsize::ceil_mul(10, p + eps) == 4);
  CHECK(binsize::floor_mul(7, Rational(-1, 10)) == -1);
  CHECK(binsize::ceil_mul(7, Rational(-1, 10)) == 0);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
}

TEST_CASE("overflow is reported, not wrapped") {
  const Rational big(std::numeric_limits<std::int64_t>::max() / 2 + 1);
  CHECK_THROWS_AS(big * Rational(4), std::overflow_error);
  CHECK_THROWS_AS(Rational(1, 4'000'000'007) * Rational(1, 4'000'000'009), std::overflow_error);
}
