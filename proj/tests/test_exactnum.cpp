#include "doctest.h"

#include "colouring/q7.hpp"
#include "colouring/rational.hpp"

using namespace colouring;

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational(2, 4).num() == 1);
  CHECK(Rational(2, 4).den() == 2);
  CHECK(Rational(3, -6).den() == 2);
}

TEST_CASE("rational parsing and printing") {
  CHECK(Rational::from_string("22/7") == Rational(22, 7));
  CHECK(Rational::from_string("-5") == Rational(-5));
  CHECK(Rational::from_string("4/6").str() == "2/3");
  CHECK(Rational(7, 1).str() == "7");
  CHECK_THROWS_AS(Rational::from_string("x"), std::invalid_argument);
}

TEST_CASE("rational arithmetic and errors") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(3, 4) / Rational(3, 2) == Rational(1, 2));
  CHECK(Rational(-7, 3).floor() == -3);
  CHECK(Rational(7, 3).floor() == 2);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(pow2_inv(4) == Rational(1, 16));
}

TEST_CASE("isqrt") {
  CHECK(isqrt(BigInt(0)) == 0);
  CHECK(isqrt(BigInt(48)) == 6);
  CHECK(isqrt(BigInt(49)) == 7);
  CHECK(isqrt(BigInt(50)) == 7);
}

TEST_CASE("q7 field arithmetic") {
  const Q7 s = Q7::sqrt7();
  CHECK(s * s == Q7(7));
  // (1 + sqrt7)^2 = 8 + 2 sqrt7
  CHECK((Q7(1) + s) * (Q7(1) + s) == Q7(Rational(8), Rational(2)));
  // (3 - sqrt7)(3 + sqrt7) = 2
  CHECK((Q7(3) - s) * (Q7(3) + s) == Q7(2));
  // inverse of 3 - sqrt7 is (3 + sqrt7) / 2
  CHECK((Q7(3) - s).inverse() == Q7(Rational(3, 2), Rational(1, 2)));
  CHECK((Q7(3) - s) * (Q7(3) - s).inverse() == Q7(1));
  CHECK_THROWS_AS(Q7(0).inverse(), std::domain_error);
  CHECK(Q7(5) / Q7(Rational(0), Rational(1)) == Q7(Rational(0), Rational(5, 7)));
}

TEST_CASE("q7 exact sign") {
  const Q7 s = Q7::sqrt7();
  CHECK(Q7(0).sign() == 0);
  CHECK((Q7(3) - s).sign() > 0);       // 9 > 7
  CHECK((Q7(2) - s).sign() < 0);       // 4 < 7
  CHECK((Q7(8) - Q7(3) * s).sign() > 0);   // 64 > 63
  CHECK((Q7(5) - Q7(2) * s).sign() < 0);   // 25 < 28
  CHECK((Q7(-8) + Q7(3) * s).sign() < 0);
  CHECK((s - Q7(2)).sign() > 0);
  CHECK(Q7(Rational(-1), Rational(0)).sign() < 0);
  CHECK((Q7(2) * s - Q7(5) > Q7(0)));
}

TEST_CASE("q7 decimal rendering") {
  const Q7 s = Q7::sqrt7();
  CHECK(s.to_decimal(5) == "2.64575");
  CHECK((Q7(3) - s).to_decimal(5) == "0.35425");
  CHECK((Q7(2) * s - Q7(5)).to_decimal(5) == "0.29150");
  CHECK((Q7(2) * s - Q7(5)).to_decimal(4) == "0.2915");
  CHECK((s - Q7(3)).to_decimal(5) == "-0.35425");
  CHECK(Q7(Rational(1, 8), Rational(0)).to_decimal(2) == "0.13");  // half away from zero
  CHECK(Q7(Rational(-1, 8), Rational(0)).to_decimal(2) == "-0.13");
  CHECK(Q7(Rational(1, 20), Rational(0)).to_decimal(1) == "0.1");
  CHECK(Q7(Rational(-1, 20), Rational(0)).to_decimal(1) == "-0.1");
  CHECK_THROWS_AS(Q7(1).to_decimal(0), std::invalid_argument);
  CHECK(Q7(Rational(12), Rational(0)).to_decimal(3) == "12.000");
}

TEST_CASE("q7 decimal agrees with double approximation") {
  // Coarse cross-check of the exact renderer against hardware floats.
  const Q7 x = Q7(Rational(31, 9), Rational(-5, 7));
  const double approx = 31.0 / 9.0 - 5.0 / 7.0 * 2.6457513110645906;
  CHECK(std::stod(x.to_decimal(8)) == doctest::Approx(approx).epsilon(1e-9));
  CHECK(x.to_double() == doctest::Approx(approx).epsilon(1e-12));
}
