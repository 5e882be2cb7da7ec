#include <doctest.h>

#include "modgrowth/error.hpp"
#include "modgrowth/rational.hpp"

using modgrowth::Rational;

TEST_SUITE("rational") {
  TEST_CASE("reduction and sign") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2).num() == -1);
    CHECK(Rational(1, -2).den() == 2);
    CHECK(Rational(0, 5) == Rational(0));
    CHECK_THROWS(Rational(1, 0));
  }

  TEST_CASE("arithmetic") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK(-Rational(2, 3) == Rational(-2, 3));
    CHECK_THROWS(Rational(1) / Rational(0));
  }

  TEST_CASE("ordering") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(7, 3).str() == "7/3");
    CHECK(Rational(4).str() == "4");
  }

  TEST_CASE("overflow") {
    const Rational big(INT64_MAX);
    CHECK_THROWS_AS(big + big, modgrowth::OverflowError);
  }
}
