#include "tropmed/rational.hpp"

#include "doctest.h"
#include "test_helpers.hpp"

using namespace tropmed;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Rat(3, 4));
  CHECK(parse_rational("-6/4") == Rat(-3, 2));
  CHECK(parse_rational("14") == Rat(14));
  CHECK(parse_rational(" -7 ") == Rat(-7));
  CHECK(parse_rational("12.25") == Rat(49, 4));
  CHECK(parse_rational("-0.125") == Rat(-1, 8));
  CHECK(parse_rational(".5") == Rat(1, 2));
  CHECK(parse_rational("5.") == Rat(5));
  CHECK(parse_rational("3e-2") == Rat(3, 100));
  CHECK(parse_rational("1.5e3") == Rat(1500));
  CHECK(parse_rational("+2.5E+1") == Rat(25));

  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("."), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e"), std::invalid_argument);
}

TEST_CASE("rational formatting") {
  CHECK(format_rational(Rat(9)) == "9");
  CHECK(format_rational(Rat(-6)) == "-6");
  CHECK(format_rational(Rat(0)) == "0");
  CHECK(format_rational(Rat(1, 2)) == "0.5");
  CHECK(format_rational(Rat(-49, 4)) == "-12.25");
  CHECK(format_rational(Rat(3, 20)) == "0.15");
  CHECK(format_rational(Rat(1, 3)) == "1/3");
  CHECK(format_rational(Rat(-5, 6)) == "-5/6");
  CHECK(format_rational(Rat(1500)) == "1500");
  CHECK(format_rational(Rat(1, 1000)) == "0.001");
}

TEST_CASE("format/parse round trip on random rationals") {
  testing::Rng rng(20240229);
  for (int round = 0; round < 500; ++round) {
    Rat value(rng.int_in(-100000, 100000), rng.int_in(1, 999));
    CHECK(parse_rational(format_rational(value)) == value);
  }
}
