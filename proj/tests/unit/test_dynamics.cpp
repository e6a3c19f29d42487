#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "line_act/cantor.hpp"
#include "line_act/classify.hpp"
#include "line_act/dynamics.hpp"
#include "line_act/error.hpp"
#include "line_act/gallery.hpp"

using namespace lineact;

namespace {

RealNum q(long n, long d = 1) { return RealNum::rational(n, d); }

Interval open(long a, long b, long d = 1) { return Interval::open(q(a, d), q(b, d)); }

Action ex13(long n) {
  GalleryParams gp;
  gp.n = n;
  return gallery("ex_1_3", gp);
}

Action ex14(long k) {
  GalleryParams gp;
  gp.k = k;
  return gallery("ex_1_4", gp);
}

bool contains(const std::vector<OrbitPoint>& pts, const mpq_class& x) {
  return std::any_of(pts.begin(), pts.end(), [&](const OrbitPoint& p) { return p.x.is_exact() && p.x.rational() == x; });
}

/// Largest gap of {m + n sqrt2 : |m| + |n| <= L} in [0, 1], in doubles.
double lattice_gap(int radius) {
  std::vector<double> pts = {0.0, 1.0};
  for (int m = -radius; m <= radius; ++m) {
    for (int n = -(radius - std::abs(m)); n <= radius - std::abs(m); ++n) {
      const double v = m + n * std::sqrt(2.0);
      if (v > 0 && v < 1) pts.push_back(v);
    }
  }
  std::sort(pts.begin(), pts.end());
  double gap = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) gap = std::max(gap, pts[i] - pts[i - 1]);
  return gap;
}

}  // namespace

TEST_CASE("orbits of the gallery examples") {
  const auto z = orbit(gallery("ex_1_1"), q(1, 2), 3);
  REQUIRE(z.size() == 7);
  for (long i = 0; i < 7; ++i) CHECK(z[static_cast<std::size_t>(i)].x.rational() == mpq_class(2 * i - 5, 2));
  CHECK(orbit(gallery("ex_1_2"), q(0), 2).size() == 13);
  const auto bs = orbit(ex13(2), q(0), 6);
  CHECK(contains(bs, mpq_class(1, 2)));
  CHECK(contains(bs, mpq_class(1, 4)));
  CHECK(contains(bs, mpq_class(3, 4)));
}

TEST_CASE("orbit witnesses reproduce their points") {
  const Action act = ex13(3);
  for (const auto& p : orbit(act, q(1, 3), 4)) {
    CHECK(certainly_within(eval(realize(act, p.witness), q(1, 3)), p.x, RealNum::parse("1e-60")));
  }
}

TEST_CASE("coverage_gap") {
  const Interval unit = Interval::closed(q(0), q(1));
  CHECK(coverage_gap(std::vector<RealNum>{q(0), q(1, 2), q(1)}, unit).rational() == mpq_class(1, 2));
  CHECK(coverage_gap(std::vector<RealNum>{}, unit).rational() == 1);
  const Action act = gallery("ex_1_2");
  for (int radius : {5, 10, 20}) {
    CAPTURE(radius);
    CHECK(coverage_gap(orbit(act, q(0), static_cast<unsigned>(radius)), unit).to_double() ==
          doctest::Approx(lattice_gap(radius)).epsilon(1e-12));
  }
  CHECK(coverage_gap(orbit(act, q(0), 50), unit).to_double() < 0.03);
}

TEST_CASE("coverage_gap never grows with the radius") {
  const Action act = gallery("ex_1_2");
  const Interval unit = Interval::closed(q(0), q(1));
  double previous = 2;
  for (unsigned radius = 1; radius <= 14; ++radius) {
    const double gap = coverage_gap(orbit(act, q(0), radius), unit).to_double();
    CHECK(gap <= previous);
    previous = gap;
  }
}

TEST_CASE("transitivity_search") {
  const Action z2 = gallery("ex_1_2");
  const auto w = transitivity_search(z2, open(0, 1, 10), open(40, 45, 100), 2);
  REQUIRE(w.has_value());
  CHECK(certainly_within(eval(realize(z2, w->word), q(0)), RealNum::parse("sqrt2") - RealNum(1), RealNum::parse("1e-60")));
  CHECK(w->radius == 2);
  CHECK_FALSE(transitivity_search(gallery("ex_1_1"), open(0, 3, 10), open(5, 8, 10), 10).has_value());
  const auto far = transitivity_search(gallery("free_transitive"), open(1, 2, 10), open(105, 106, 10), 12);
  REQUIRE(far.has_value());
  CHECK(far->radius <= 12);
}

TEST_CASE("wandering certificates") {
  const auto z = wandering_certificate(gallery("ex_1_1"), open(0, 1, 2), 10);
  CHECK(z.certified);
  CHECK(z.verdicts.size() == 20);

  const Action klein = gallery("klein_bottle");
  const auto k = wandering_certificate(klein, open(2, 3, 10), 6);
  CHECK(k.certified);
  for (const auto& v : k.verdicts) {
    const bool identity = is_canonical_identity(canonical_form(klein.presentation(), v.word.letters()));
    CHECK(v.verdict == (identity ? Verdict::PointwiseFixed : Verdict::Disjoint));
  }

  const auto bad = wandering_certificate(ex14(2), open(2, 3, 10), 6);
  CHECK_FALSE(bad.certified);
  REQUIRE(bad.witness.has_value());
}

TEST_CASE("a certified interval admits no transitivity inside it") {
  std::mt19937_64 rng(3);
  const std::pair<Action, Interval> cases[] = {{gallery("ex_1_1"), open(0, 1, 2)}, {gallery("klein_bottle"), open(2, 3, 10)}};
  for (const auto& [act, j] : cases) {
    const unsigned radius = 6;
    REQUIRE(wandering_certificate(act, j, radius).certified);
    const mpq_class lo = j.lo().value.rational();
    const mpq_class width = j.hi().value.rational() - lo;
    for (int t = 0; t < 5; ++t) {
      // Four increasing cut points give two subintervals with disjoint closures.
      std::vector<long> cuts;
      for (int c = 0; c < 4; ++c) cuts.push_back(1 + static_cast<long>(rng() % 999));
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      if (cuts.size() < 4) continue;
      auto at = [&](long c) { return RealNum(mpq_class(lo + width * mpq_class(c, 1000))); };
      const Interval u = Interval::open(at(cuts[0]), at(cuts[1]));
      const Interval v = Interval::open(at(cuts[2]), at(cuts[3]));
      CHECK_FALSE(transitivity_search(act, u, v, radius).has_value());
      CHECK_FALSE(transitivity_search(act, v, u, radius).has_value());
    }
  }
}

TEST_CASE("find_wandering_interval") {
  WanderingParams params;
  params.verify_radius = 6;
  const WanderingResult k = find_wandering_interval(gallery("klein_bottle"), open(-4, 4), params);
  CHECK(certainly_subset(k.j, open(0, 1)));
  REQUIRE(k.certificate.has_value());
  CHECK(k.certificate->certified);
  CHECK(k.certificate->radius == 6);

  const Action trivial(Presentation::free(2), {HomeoExpr::identity(), HomeoExpr::identity()});
  const WanderingResult t = find_wandering_interval(trivial, open(-4, 4));
  CHECK(t.trivial_action);
  CHECK(certainly_subset(t.j, open(-4, 4)));
  CHECK(certainly_subset(open(-4, 4), t.j.closure()));

  try {
    find_wandering_interval(ex14(2), open(-4, 4));
    FAIL("expected not-applicable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotApplicable);
  }
}

TEST_CASE("Cantor ladder for BS(1,-2)") {
  const Action act = ex14(2);
  const CantorLadder ladder = cantor_ladder(act, 3, open(0, 1));
  REQUIRE(ladder.complete);
  CHECK(ladder.check.passed);
  REQUIRE(ladder.levels.size() == 3);
  CHECK(ladder.levels[2].elements.size() == 8);
  CHECK(ladder.levels[2].lambda.size() == 8);
  for (std::size_t i = 0; i < ladder.levels.size(); ++i) {
    const CantorLevel& lvl = ladder.levels[i];
    const Interval cu = lvl.u.closure();
    CHECK(overlap(eval_interval(realize(act, lvl.g), cu), cu) == Overlap::Disjoint);
    if (i > 0) {
      CHECK(certainly_subset(cu, ladder.levels[i - 1].u));
      // Each component of Lambda_i sits inside a component of Lambda_{i-1}.
      for (const auto& c : lvl.lambda) {
        const auto& outer = ladder.levels[i - 1].lambda;
        CHECK(std::any_of(outer.begin(), outer.end(), [&](const Interval& o) { return certainly_subset(c, o); }));
      }
    }
  }
  // The checker is independent: corrupting a level is caught.
  CantorLadder broken = ladder;
  broken.levels[1].u = broken.levels[0].u;
  CHECK_FALSE(check_cantor_ladder(act, broken).passed);
}

TEST_CASE("Cantor ladder needs a moving pair") {
  try {
    cantor_ladder(gallery("ex_1_1"), 3, open(0, 1, 2));
    FAIL("expected no-moving-pair");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoMovingPair);
  }
}

TEST_CASE("orbit closure classification") {
  const Action fixed(Presentation::free(1), {HomeoExpr::identity()});
  CHECK(classify_orbit_closure(fixed, q(0), 5, Interval::closed(q(-1), q(1))).kind == OrbitClosure::FixedPoint);
  const auto z = classify_orbit_closure(gallery("ex_1_1"), q(0), 10, Interval::closed(q(-5), q(5)));
  CHECK(z.kind == OrbitClosure::DiscreteSequence);
  CHECK(z.min_spacing == doctest::Approx(1.0));
  const auto d = classify_orbit_closure(gallery("ex_1_2"), q(0), 50, Interval::closed(q(0), q(1)));
  CHECK(d.kind == OrbitClosure::Dense);
  CHECK_FALSE(d.best_effort);
}

TEST_CASE("dichotomy resolves every gallery action") {
  for (const auto& entry : gallery_entries()) {
    CAPTURE(entry.name);
    const DichotomyResult r = resolve_dichotomy(gallery(entry.name));
    CHECK(r.outcome != DichotomyResult::Outcome::Unresolved);
    CHECK(r.pairs.size() == 10);
    if (entry.name == "ex_1_1") {
      CHECK(r.outcome == DichotomyResult::Outcome::WanderingAtDepth);
      REQUIRE(r.certificate.has_value());
      CHECK(r.certificate->certified);
    }
  }
}

TEST_CASE("results do not depend on the worker count") {
  const Action act = ex13(2);
  const auto serial = orbit(act, q(1, 3), 7, 1);
  const auto parallel = orbit(act, q(1, 3), 7, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(identical(serial[i].x, parallel[i].x));
    CHECK(serial[i].witness == parallel[i].witness);
  }
  CertificateOptions one;
  CertificateOptions four;
  four.workers = 4;
  const auto a = wandering_certificate(gallery("klein_bottle"), open(2, 3, 10), 6, one);
  const auto b = wandering_certificate(gallery("klein_bottle"), open(2, 3, 10), 6, four);
  REQUIRE(a.verdicts.size() == b.verdicts.size());
  for (std::size_t i = 0; i < a.verdicts.size(); ++i) {
    CHECK(a.verdicts[i].word == b.verdicts[i].word);
    CHECK(a.verdicts[i].verdict == b.verdicts[i].verdict);
  }
  const auto w1 = transitivity_search(gallery("free_transitive"), open(1, 2, 10), open(105, 106, 10), 12, 1);
  const auto w4 = transitivity_search(gallery("free_transitive"), open(1, 2, 10), open(105, 106, 10), 12, 4);
  REQUIRE(w1.has_value());
  REQUIRE(w4.has_value());
  CHECK(w1->word == w4->word);
}
