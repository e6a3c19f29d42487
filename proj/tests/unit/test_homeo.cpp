#include <doctest.h>

#include "line_act/error.hpp"
#include "line_act/homeo.hpp"
#include "line_act/homeo_text.hpp"
#include "support/random_homeo.hpp"

using namespace lineact;

namespace {

RealNum q(long n, long d = 1) { return RealNum::rational(n, d); }

bool exactly(const RealNum& x, const mpq_class& want) { return x.is_exact() && x.rational() == want; }

HomeoExpr ladder2() { return HomeoExpr::ladder(2, 1); }

}  // namespace

TEST_CASE("eval on the basic nodes") {
  CHECK(exactly(eval(HomeoExpr::affine(q(1), q(1)), q(0)), 1));
  CHECK(exactly(eval(ladder2(), q(1, 2)), mpq_class(1, 4)));
  const RealNum y = eval(ladder2(), q(3, 2));
  CHECK(certainly_within(y, RealNum::parse("1.612547326536065924631668213745673170675"), RealNum::parse("1e-35")));
}

TEST_CASE("eval with a tolerance raises the precision") {
  const RealNum y = eval(ladder2(), q(3, 2), RealNum::parse("1e-200"));
  CHECK(y.error_double() <= 1e-200);
  CHECK_THROWS_AS(eval(ladder2(), q(3, 2), RealNum::parse("1e-5000")), Error);
}

TEST_CASE("eval_interval maps endpoints and keeps openness") {
  const Interval a = eval_interval(HomeoExpr::affine(q(2), q(0)), Interval::open(q(0), q(1)));
  CHECK(exactly(a.lo().value, 0));
  CHECK(exactly(a.hi().value, 2));
  CHECK(a.lo().open);
  const Interval c = eval_interval(HomeoExpr::odd_power(3, false), Interval::open(q(1), q(2)));
  CHECK(exactly(c.hi().value, 8));
  const Interval l = eval_interval(ladder2(), Interval::open(q(1, 5), q(3, 10)));
  CHECK(exactly(l.lo().value, mpq_class(1, 25)));
  CHECK(exactly(l.hi().value, mpq_class(9, 100)));
  const Interval w = eval_interval(HomeoExpr::affine(q(2), q(1)), Interval::whole());
  CHECK(w.lo().kind == Endpoint::Kind::NegInf);
  CHECK(w.hi().kind == Endpoint::Kind::PosInf);
}

TEST_CASE("inverse is structural") {
  CHECK(exactly(eval(inverse(HomeoExpr::affine(q(2), q(1))), q(3)), 1));
  CHECK(exactly(eval(inverse(ladder2()), q(1, 4)), mpq_class(1, 2)));
  const HomeoExpr f = HomeoExpr::odd_power(3, false);
  const HomeoExpr g = HomeoExpr::affine(q(3), q(-1, 2));
  const HomeoExpr lhs = inverse(compose(f, g));
  const HomeoExpr rhs = compose(inverse(g), inverse(f));
  for (const RealNum& x : {q(-3), q(0), q(5, 7), q(11)}) {
    CHECK(certainly_within(eval(lhs, x), eval(rhs, x), RealNum::parse("1e-60")));
  }
}

TEST_CASE("compose follows the standard order") {
  const HomeoExpr t = compose(HomeoExpr::affine(q(1), q(1)), HomeoExpr::affine(q(1), q(2)));
  CHECK(exactly(eval(t, q(-5)), -2));
  const HomeoExpr s = HomeoExpr::affine(q(2), q(0));
  const HomeoExpr tr = HomeoExpr::translation(q(1));
  CHECK(exactly(eval(compose(inverse(s), compose(tr, s)), q(0)), mpq_class(1, 2)));
  const HomeoExpr s3 = HomeoExpr::compose({s, s, s});
  CHECK(exactly(eval(HomeoExpr::compose({inverse(s3), tr, s3}), q(0)), mpq_class(1, 8)));
}

TEST_CASE("simplify folds affine chains and cancellations") {
  const HomeoExpr folded = simplify(compose(HomeoExpr::affine(q(2), q(0)), HomeoExpr::affine(q(3), q(1))));
  CHECK(structurally_equal(folded, HomeoExpr::affine(q(6), q(2))));
  const HomeoExpr cube = HomeoExpr::odd_power(3, false);
  CHECK(structurally_equal(simplify(HomeoExpr::inverse_node(HomeoExpr::inverse_node(cube))), cube));
  const HomeoExpr h = HomeoExpr::affine(q(5), q(2));
  CHECK(simplify(compose(h, inverse(h))).kind() == HomeoExpr::Kind::Identity);
}

TEST_CASE("fixed_points finds isolated fixed points") {
  const RealNum tol = RealNum::parse("1e-12");
  const FixReport none = fixed_points(HomeoExpr::translation(q(1)), Interval::closed(q(-10), q(10)), 200, tol);
  CHECK(none.fixed_points.empty());
  REQUIRE(none.complement_intervals.size() == 1);
  const FixReport cube = fixed_points(HomeoExpr::odd_power(3, false), Interval::closed(q(-2), q(2)), 200, tol);
  REQUIRE(cube.fixed_points.size() == 3);
  CHECK(certainly_within(cube.fixed_points[0], q(-1), tol));
  CHECK(certainly_within(cube.fixed_points[1], q(0), tol));
  CHECK(certainly_within(cube.fixed_points[2], q(1), tol));
  const FixReport lad = fixed_points(ladder2(), Interval::closed(q(-5, 2), q(5, 2)), 200, tol);
  REQUIRE(lad.fixed_points.size() == 5);
  for (long n = -2; n <= 2; ++n) CHECK(certainly_within(lad.fixed_points[static_cast<std::size_t>(n + 2)], q(n), tol));
  CHECK_THROWS_AS(fixed_points(ladder2(), Interval::closed(q(1), q(1)), 10, tol), Error);
}

TEST_CASE("is_identity_on") {
  const RealNum tol = RealNum::parse("1e-12");
  CHECK(is_identity_on(HomeoExpr::identity(), Interval::open(q(-1), q(1)), 16, tol));
  CHECK_FALSE(is_identity_on(HomeoExpr::ladder(1, 1), Interval::open(q(1, 10), q(9, 10)), 16, tol));
  // Identity outside (-1, 1) for the bounded conjugate.
  CHECK(is_identity_on(HomeoExpr::bounded_conjugate(HomeoExpr::translation(q(1))), Interval::open(q(2), q(5)), 16, tol));
}

TEST_CASE("text form round trips") {
  const std::string text = "compose(affine(1/2,3),bconj(ladder(2,-1)),inverse(oddpower(5,root)))";
  const HomeoExpr h = parse_homeo(text);
  CHECK(h.to_string() == text);
  CHECK(structurally_equal(parse_homeo(h.to_string()), h));
  try {
    parse_homeo("compose(affine(1,1),oddpower(4,fwd))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() > 20);
  }
  CHECK_THROWS_AS(parse_homeo("affine(-1,0)"), Error);
}

TEST_CASE("random trees: round trip, order, images and simplify agree") {
  testing::RandomHomeo gen(17);
  const RealNum tol = RealNum::parse("1e-25");
  const RealNum tight = RealNum::parse("1e-27");
  int trees = 0;
  while (trees < 150) {
    const HomeoExpr h = gen.tree(5);
    const RealNum a = gen.point(-8, 8);
    const RealNum b = a + RealNum::rational(1, 64);
    try {
      eval(h, a);
      eval(h, b);
    } catch (const Error&) {
      continue;  // outside the cellwise-evaluable range
    }
    ++trees;
    CAPTURE(h.to_string());
    CHECK(certainly_within(eval(compose(inverse(h), h), a, tight), a, tol));
    CHECK(certainly_less(eval(h, a, RealNum::parse("1e-100")), eval(h, b, RealNum::parse("1e-100"))));
    CHECK(eval_interval(h, Interval::open(a, b)).certainly_contains(eval(h, (a + b) / RealNum(2))));
    CHECK(certainly_within(eval(simplify(h), a, tight), eval(h, a, tight), tol));
  }
}

TEST_CASE("affine pipelines over the rationals are exact") {
  const HomeoExpr h = HomeoExpr::compose({HomeoExpr::affine(q(3, 2), q(-1, 7)), HomeoExpr::translation(q(5)),
                                          inverse(HomeoExpr::affine(q(4), q(1, 3)))});
  const RealNum y = eval(h, q(-7, 2));
  REQUIRE(y.is_exact());
  // (3/2) * ((x - 1/3) / 4 + 5) - 1/7 at x = -7/2.
  CHECK(y.rational() == mpq_class(3, 2) * ((mpq_class(-7, 2) - mpq_class(1, 3)) / 4 + 5) - mpq_class(1, 7));
}
