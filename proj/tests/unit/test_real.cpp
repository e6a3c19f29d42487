#include <doctest.h>

#include "line_act/error.hpp"
#include "line_act/real.hpp"

using namespace lineact;

TEST_CASE("rational arithmetic stays exact") {
  const RealNum a = RealNum::rational(1, 3);
  const RealNum b = RealNum::rational(-7, 2);
  const RealNum c = (a + b) * RealNum(6) / RealNum(5);
  REQUIRE(c.is_exact());
  CHECK(c.rational() == mpq_class(-19, 5));
  CHECK(pow_int(a, 5).rational() == mpq_class(1, 243));
  CHECK(root(RealNum(27), 3).rational() == 3);
}

TEST_CASE("parse accepts the documented literal forms") {
  CHECK(RealNum::parse("3/4").rational() == mpq_class(3, 4));
  CHECK(RealNum::parse("-0.25").rational() == mpq_class(-1, 4));
  CHECK(RealNum::parse("1e-3").rational() == mpq_class(1, 1000));
  const RealNum s = RealNum::parse("sqrt2");
  CHECK_FALSE(s.is_exact());
  CHECK(certainly_within(s * s, RealNum(2), RealNum::parse("1e-70")));
  const RealNum tracked = RealNum::parse("2.5+-0.01");
  CHECK_FALSE(tracked.is_exact());
  CHECK(certainly_within(tracked, RealNum::rational(5, 2), RealNum::rational(1, 50)));
  CHECK_THROWS_AS(RealNum::parse("two"), Error);
}

TEST_CASE("enclosures are outward rounded") {
  const RealNum third = root(RealNum(2), 3);
  const RealNum back = pow_int(third, 3);
  CHECK(back.lower().compare(BigFloat::from_long(2)) <= 0);
  CHECK(back.upper().compare(BigFloat::from_long(2)) >= 0);
  CHECK(compare(back, RealNum(2)) == Order::Unknown);
  CHECK(certainly_within(back, RealNum(2), RealNum::parse("1e-70")));
}

TEST_CASE("working precision is scoped per thread") {
  CHECK(working_precision() == kDefaultPrecision);
  {
    PrecisionScope scope(1024);
    CHECK(working_precision() == 1024);
    const RealNum s = RealNum::parse("sqrt2");
    CHECK(s.error_double() < 1e-300);
  }
  CHECK(working_precision() == kDefaultPrecision);
}

TEST_CASE("comparisons report Unknown only for overlapping enclosures") {
  const RealNum s = RealNum::parse("sqrt2");
  CHECK(compare(s, RealNum(1)) == Order::Greater);
  CHECK(compare(RealNum(1), s) == Order::Less);
  CHECK(compare(RealNum::rational(2, 4), RealNum::rational(1, 2)) == Order::Equal);
  CHECK(compare(s, s) == Order::Unknown);
}

TEST_CASE("common_floor needs the enclosure inside one cell") {
  CHECK(*common_floor(RealNum::rational(-7, 2)) == -4);
  CHECK(*common_floor(RealNum::parse("sqrt2")) == 1);
  CHECK_FALSE(common_floor(RealNum::parse("1+-0.5")).has_value());
}

TEST_CASE("huge exact results fall back to enclosures") {
  RealNum x = RealNum::rational(3, 7);
  for (int i = 0; i < 20; ++i) x = x * x;  // 2^20-th power: well past the exact size cap
  CHECK_FALSE(x.is_exact());
  CHECK(x.certainly_positive());
}
