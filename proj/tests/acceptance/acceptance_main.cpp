// Acceptance run: one PASS/FAIL line per criterion, with timings.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "line_act/cantor.hpp"
#include "line_act/dynamics.hpp"
#include "line_act/error.hpp"
#include "line_act/extension.hpp"
#include "line_act/gallery.hpp"
#include "support/klein_rewrite.hpp"
#include "support/random_homeo.hpp"

using namespace lineact;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

RealNum dec(const char* text) { return RealNum::parse(text); }

std::vector<Letter> repeat(unsigned gen, long exp) {
  std::vector<Letter> w;
  for (long i = 0; i < (exp < 0 ? -exp : exp); ++i) w.push_back({gen, exp < 0});
  return w;
}

std::vector<Letter> concat(std::initializer_list<std::vector<Letter>> parts) {
  std::vector<Letter> w;
  for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
  return w;
}

/// Same pair generator as the dichotomy sweep: hundredth-grid endpoints in
/// [-3, 3], widths in [0.1, 0.4].
Interval random_window(std::mt19937_64& rng) {
  const long width = 10 + static_cast<long>(rng() % 31);
  const long lo = -300 + static_cast<long>(rng() % static_cast<std::uint64_t>(601 - width));
  return Interval::open(RealNum::rational(lo, 100), RealNum::rational(lo + width, 100));
}

GroupElement random_word(std::mt19937_64& rng, const Presentation& p, unsigned max_len) {
  const unsigned len = static_cast<unsigned>(rng() % (max_len + 1));
  std::vector<Letter> w;
  for (unsigned i = 0; i < len; ++i) w.push_back(Letter::from_code(static_cast<unsigned>(rng() % (2 * p.rank()))));
  return reduce(p, w);
}

// BS(1,n) by translation and scaling: conjugated translations are exact.
Outcome criterion1() {
  const std::vector<RealNum> xs = {RealNum(0), RealNum::rational(1, 3), RealNum::rational(-7, 2)};
  std::size_t checked = 0;
  for (long n : {2L, 3L, 5L}) {
    GalleryParams gp;
    gp.n = n;
    const Action act = gallery("ex_1_3", gp);
    for (long m = 0; m <= 10; ++m) {
      const HomeoExpr h = realize(act, concat({repeat(1, -m), repeat(0, 1), repeat(1, m)}));
      mpq_class shift(1);
      for (long i = 0; i < m; ++i) shift /= n;
      for (const auto& x : xs) {
        const RealNum y = eval(h, x);
        ++checked;
        if (!y.is_exact() || y.rational() != x.rational() + shift) {
          return {false, "n=" + std::to_string(n) + " m=" + std::to_string(m) + " x=" + x.to_string() +
                             " gave " + y.to_string()};
        }
      }
    }
  }
  return {true, std::to_string(checked) + " exact evaluations"};
}

// BS(1,-k) ladder action: the relation and the orbit closed form.
Outcome criterion2() {
  double worst_rel = 0;
  double worst_orbit = 0;
  for (long k : {2L, 3L}) {
    GalleryParams gp;
    gp.k = k;
    const Action act = gallery("ex_1_4", gp);
    const RelationReport report =
        check_relations(act, {Interval::closed(RealNum(-4), RealNum(5)), 1000}, dec("1e-20"));
    for (const auto& r : report.relations) worst_rel = std::max(worst_rel, r.worst.to_double());
    if (!report.passed) return {false, "k=" + std::to_string(k) + " relation residual above 1e-20"};
    const RealNum half = RealNum::rational(1, 2);
    for (long m = -3; m <= 3; ++m) {
      for (long l = -3; l <= 3; ++l) {
        for (long n = -3; n <= 3; ++n) {
          // f = b (translation), g = a (ladder).
          const HomeoExpr h = realize(act, concat({repeat(1, m), repeat(0, l), repeat(1, n)}));
          mpz_class kp;
          mpz_ui_pow_ui(kp.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(n < 0 ? -n : n));
          mpq_class e(l * ((n % 2 == 0) ? 1 : -1));
          if (n >= 0) {
            e /= kp;
          } else {
            e *= kp;
          }
          const RealNum expected = pow_real(half, exp2(RealNum(e))) + RealNum(n + m);
          const RealNum got = eval(h, half);
          worst_orbit = std::max(worst_orbit, abs_diff_bound(got, expected).to_double());
          if (!certainly_within(got, expected, dec("1e-20"))) {
            return {false, "orbit formula off at m=" + std::to_string(m) + " l=" + std::to_string(l) +
                               " n=" + std::to_string(n)};
          }
        }
      }
    }
  }
  std::ostringstream os;
  os << "max relation residual " << worst_rel << ", max orbit error " << worst_orbit;
  return {true, os.str()};
}

// Z^2 by translations: coverage gap of the Z^2 orbit of 0 in [0, 1].
Outcome criterion3() {
  const Action act = gallery("ex_1_2");
  const Interval unit = Interval::closed(RealNum(0), RealNum(1));
  const double gap5 = coverage_gap(orbit(act, RealNum(0), 5), unit).to_double();
  const double gap50 = coverage_gap(orbit(act, RealNum(0), 50), unit).to_double();
  const bool a = std::abs(gap5 - 0.172) <= 1e-6;
  const bool b = gap50 < 0.03;
  char buf[160];
  std::snprintf(buf, sizeof buf, "L=5 gap %.6f (target 0.172 +- 1e-6: %s), L=50 gap %.6f (< 0.03: %s)", gap5,
                a ? "ok" : "miss", gap50, b ? "ok" : "miss");
  return {a && b, buf};
}

// Klein bottle: constructed J certified at L = 6, normal forms cross-checked.
Outcome criterion4() {
  const Action act = gallery("klein_bottle");
  const Presentation& p = act.presentation();
  WanderingParams wp;
  const WanderingResult found = find_wandering_interval(act, Interval::open(RealNum(-4), RealNum(4)), wp);
  const WanderingCertificate cert = wandering_certificate(act, found.j, 6);
  std::size_t fixed = 0;
  for (const auto& v : cert.verdicts) {
    const bool identity = is_canonical_identity(canonical_form(p, v.word.letters()));
    const Verdict want = identity ? Verdict::PointwiseFixed : Verdict::Disjoint;
    if (v.verdict != want) {
      return {false, "word " + word_to_string(p, v.word) + " got " + to_string(v.verdict) + ", wanted " +
                         to_string(want)};
    }
    if (identity) ++fixed;
  }
  if (!cert.certified) return {false, "certificate not issued"};

  Ball words(p, 4, Ball::Mode::ReducedWords);
  std::vector<std::vector<Letter>> oracle;
  for (std::size_t i = 0; i < words.size(); ++i) oracle.push_back(testing::klein_rewrite(words.letters(i)));
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      const bool nf_equal = same_element(p, words.element(i), words.element(j));
      if (nf_equal != (oracle[i] == oracle[j])) {
        return {false, "normal form disagrees with rewriting on " + word_to_string(p, words.element(i)) +
                           " vs " + word_to_string(p, words.element(j))};
      }
      ++pairs;
    }
  }
  return {true, "J=" + found.j.to_string() + ", " + std::to_string(cert.verdicts.size()) + " words (" +
                    std::to_string(fixed) + " identity), " + std::to_string(pairs) + " word pairs match rewriting"};
}

// Extension of Z^2 on (0, 1) to Z^3 on the line.
Outcome criterion5() {
  const Action act = extend_action(direct_product_spec(*RealNum::named_constant("sqrt2", working_precision())));
  const Presentation& p = act.presentation();
  std::mt19937_64 rng(5);
  const RealNum tol = dec("1e-20");
  double worst = 0;
  for (int pair = 0; pair < 200; ++pair) {
    const GroupElement u = random_word(rng, p, 6);
    const GroupElement v = random_word(rng, p, 6);
    const HomeoExpr uv = realize(act, multiply(p, u, v));
    const HomeoExpr hu = realize(act, u);
    const HomeoExpr hv = realize(act, v);
    for (int s = 0; s < 50; ++s) {
      const RealNum x = RealNum::rational(-192 + static_cast<long>(rng() % 385), 64);
      const RealNum lhs = eval(uv, x);
      const RealNum rhs = eval(hu, eval(hv, x));
      worst = std::max(worst, abs_diff_bound(lhs, rhs).to_double());
      if (!certainly_within(lhs, rhs, tol)) {
        return {false, "homomorphism residual above 1e-20 for " + word_to_string(p, u) + " * " +
                           word_to_string(p, v) + " at " + x.to_string()};
      }
    }
  }
  unsigned deepest = 0;
  for (int pair = 0; pair < 10; ++pair) {
    const Interval u = random_window(rng);
    const Interval v = random_window(rng);
    const auto w = transitivity_search(act, u, v, 20);
    if (!w) return {false, "no word maps " + u.to_string() + " onto " + v.to_string() + " within L=20"};
    deepest = std::max(deepest, w->radius);
  }
  std::ostringstream os;
  os << "homomorphism residual " << worst << ", 10/10 pairs found, longest witness " << deepest;
  return {true, os.str()};
}

// The free action by x+1 and x^3.
Outcome criterion6() {
  const Action act = gallery("free_transitive");
  const Presentation& p = act.presentation();
  const Interval u = Interval::open(dec("0.1"), dec("0.2"));
  const Interval v = Interval::open(dec("10.5"), dec("10.6"));
  const auto w = transitivity_search(act, u, v, 12);
  if (!w) return {false, "no witness up to L=12"};
  if (overlap(eval_interval(realize(act, w->word), u), v) != Overlap::Intersecting) {
    return {false, "witness " + word_to_string(p, w->word) + " does not re-verify"};
  }
  // Breadth-first oracle: no strictly shorter word reaches V.
  Ball ball(p, w->radius == 0 ? 0 : w->radius - 1, Ball::Mode::ReducedWords);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (overlap(eval_interval(realize(act, ball.letters(i)), u), v) == Overlap::Intersecting) {
      return {false, "shorter witness " + word_to_string(p, ball.element(i)) + " was missed"};
    }
  }
  const std::vector<RealNum> probes = {dec("0.3"), dec("1.7"), dec("-2.2")};
  Ball words(p, 6, Ball::Mode::ReducedWords);
  for (std::size_t i = 1; i < words.size(); ++i) {
    const HomeoExpr h = realize(act, words.letters(i));
    bool moves = false;
    for (const auto& x : probes) {
      RealNum y = eval(h, x);
      if (compare(y, x) == Order::Unknown) y = eval(h, x, dec("1e-60"));
      const Order o = compare(y, x);
      moves = o == Order::Less || o == Order::Greater;
      if (moves) break;
    }
    if (!moves) return {false, "word " + word_to_string(p, words.element(i)) + " fixes all probes"};
  }
  return {true, "witness " + word_to_string(p, w->word) + " at L=" + std::to_string(w->radius) + ", " +
                    std::to_string(words.size() - 1) + " reduced words of length <= 6 move a probe"};
}

// Cantor ladder for BS(1,-2), depth 3.
Outcome criterion7() {
  GalleryParams gp;
  gp.k = 2;
  const Action act = gallery("ex_1_4", gp);
  CantorParams cp;
  cp.radius = 5;
  const CantorLadder ladder = cantor_ladder(act, 3, Interval::open(RealNum(0), RealNum(1)), cp);
  if (!ladder.complete) return {false, "ladder incomplete: " + ladder.diagnosis};
  const CantorCheck check = check_cantor_ladder(act, ladder, cp);
  for (const auto& [name, ok] : check.items) {
    if (!ok) return {false, "check failed: " + name};
  }
  const CantorLevel& last = ladder.levels.back();
  if (last.elements.size() != 8 || last.lambda.size() != 8) {
    return {false, "|G_3| = " + std::to_string(last.elements.size()) + ", |Lambda_3| = " +
                       std::to_string(last.lambda.size())};
  }
  for (std::size_t i = 0; i + 1 < last.lambda.size(); ++i) {
    if (overlap(last.lambda[i], last.lambda[i + 1]) != Overlap::Disjoint) {
      return {false, "Lambda_3 components " + std::to_string(i) + " and " + std::to_string(i + 1) + " overlap"};
    }
  }
  std::string words;
  for (const auto& lvl : ladder.levels) words += (words.empty() ? "" : ", ") + word_to_string(act.presentation(), lvl.g);
  return {check.passed, std::to_string(check.items.size()) + " checks pass, g_i = " + words + ", |G_3| = 8"};
}

// Dichotomy over the gallery.
Outcome criterion8() {
  std::string summary;
  bool ok = true;
  for (const auto& entry : gallery_entries()) {
    const DichotomyResult r = resolve_dichotomy(gallery(entry.name));
    if (r.outcome == DichotomyResult::Outcome::Unresolved) ok = false;
    summary += (summary.empty() ? "" : ", ") + entry.name + ": " + to_string(r.outcome);
  }
  return {ok, summary};
}

// Random expression trees.
Outcome criterion9() {
  testing::RandomHomeo gen(9);
  const RealNum tol = dec("1e-25");
  const RealNum tight = dec("1e-27");
  std::size_t redrawn = 0;
  for (int t = 0; t < 1000; ++t) {
    // Points come first: 10 round trips, 100 ordered pairs, 50 intervals, 100 simplify probes.
    std::vector<RealNum> pts;
    for (int s = 0; s < 10 + 200 + 100 + 100; ++s) pts.push_back(gen.point(-8, 8));
    HomeoExpr h = gen.tree(6);
    // Trees whose values leave the cellwise-evaluable range at these points are redrawn.
    for (;;) {
      try {
        for (std::size_t s = 0; s < pts.size(); ++s) {
          const RealNum y = eval(h, pts[s]);
          if (s < 10) eval(inverse(h), y);
        }
        break;
      } catch (const Error&) {
        ++redrawn;
        h = gen.tree(6);
      }
    }
    const HomeoExpr round_trip = compose(inverse(h), h);
    const HomeoExpr simple = simplify(h);
    const std::string id = "tree " + std::to_string(t) + " " + h.to_string();
    std::size_t next = 0;
    for (int s = 0; s < 10; ++s) {
      const RealNum& x = pts[next++];
      if (!certainly_within(eval(round_trip, x, tight), x, tol)) return {false, id + ": round trip at " + x.to_string()};
    }
    auto ordered_pair = [&]() {
      RealNum a = pts[next++];
      RealNum b = pts[next++];
      if (certainly_less(b, a)) std::swap(a, b);
      return std::make_pair(a, b);
    };
    for (int s = 0; s < 100; ++s) {
      const auto [a, b] = ordered_pair();
      if (compare(a, b) == Order::Equal) continue;
      RealNum ya = eval(h, a);
      RealNum yb = eval(h, b);
      if (compare(ya, yb) == Order::Unknown) {
        ya = eval(h, a, dec("1e-200"));
        yb = eval(h, b, dec("1e-200"));
      }
      if (!certainly_less(ya, yb)) return {false, id + ": not increasing on " + a.to_string() + " < " + b.to_string()};
    }
    for (int s = 0; s < 50; ++s) {
      const auto [a, b] = ordered_pair();
      if (compare(a, b) == Order::Equal) continue;
      const RealNum x = (a + b) / RealNum(2);
      if (!eval_interval(h, Interval::open(a, b)).certainly_contains(eval(h, x))) {
        return {false, id + ": interval image misses h(" + x.to_string() + ")"};
      }
    }
    for (int s = 0; s < 100; ++s) {
      const RealNum& x = pts[next++];
      if (!certainly_within(eval(simple, x, tight), eval(h, x, tight), tol)) {
        return {false, id + ": simplified tree differs at " + x.to_string()};
      }
    }
  }

  // Affine pipelines over rationals stay exact; compared with a direct fold.
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    std::vector<HomeoExpr> parts;
    std::vector<std::pair<mpq_class, mpq_class>> coeffs;
    const unsigned n = 1 + static_cast<unsigned>(rng() % 6);
    for (unsigned i = 0; i < n; ++i) {
      mpq_class a(static_cast<long>(1 + rng() % 5), static_cast<long>(1 + rng() % 4));
      mpq_class b(static_cast<long>(rng() % 21) - 10, static_cast<long>(1 + rng() % 7));
      a.canonicalize();
      b.canonicalize();
      parts.push_back(HomeoExpr::affine(RealNum(a), RealNum(b)));
      coeffs.emplace_back(a, b);
    }
    const HomeoExpr h = HomeoExpr::compose(parts);
    for (int s = 0; s < 10; ++s) {
      mpq_class x(static_cast<long>(rng() % 1025) - 512, 64);
      x.canonicalize();
      mpq_class want = x;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) want = it->first * want + it->second;
      const RealNum got = eval(h, RealNum(x));
      const RealNum back = eval(inverse(h), got);
      if (!got.is_exact() || got.rational() != want || !back.is_exact() || back.rational() != x) {
        return {false, "affine pipeline " + h.to_string() + " inexact at " + x.get_str()};
      }
    }
  }
  return {true, "1000 trees (" + std::to_string(redrawn) + " redrawn), 200 exact affine pipelines"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, 1, criterion1},   {2, 30, criterion2},  {3, 10, criterion3},
      {4, 60, criterion4},  {5, 120, criterion5}, {6, 120, criterion6},
      {7, 300, criterion7}, {8, 600, criterion8}, {9, 600, criterion9},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      out.pass = false;
      out.detail += " [over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget]";
    }
    std::printf("criterion %d: %s  %.2f s  %s\n", c.id, out.pass ? "PASS" : "FAIL", secs, out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
