#include "line_act/cantor.hpp"

#include <algorithm>
#include <set>

#include "line_act/error.hpp"
#include "line_act/parallel.hpp"

namespace lineact {

namespace {

struct MovingPair {
  GroupElement word;
  RealNum x;
};

mpq_class lo_q(const Interval& i) { return i.lo().value.midpoint_rational(); }
mpq_class hi_q(const Interval& i) { return i.hi().value.midpoint_rational(); }

// A word w and a point x with x < w(x), both in u. Words are tried in
// shortlex order: any w whose image of u meets u without fixing it yields a
// pair (using w or its inverse).
std::optional<MovingPair> find_moving_pair(const Action& act, const Interval& u, const CantorParams& params) {
  const Presentation& p = act.presentation();
  Ball ball(p, 0);
  std::vector<Interval> layer{u};
  for (unsigned len = 1; len <= params.search_radius; ++len) {
    ball.grow();
    const std::size_t begin = ball.layer_begin(len);
    const std::size_t prev_begin = ball.layer_begin(len - 1);
    std::vector<Interval> next(ball.size() - begin);
    parallel_for(next.size(), params.workers, [&](std::size_t k) {
      next[k] = eval_interval(act.letter_image(ball.first_letter(begin + k)), layer[ball.parent(begin + k) - prev_begin]);
    });
    layer = std::move(next);
    for (std::size_t k = 0; k < layer.size(); ++k) {
      if (overlap(layer[k], u) != Overlap::Intersecting) continue;
      // y ranges over u and w(u); x = w^-1(y).
      const mpq_class lo = std::max(lo_q(u), lo_q(layer[k]));
      const mpq_class hi = std::min(hi_q(u), hi_q(layer[k]));
      if (lo >= hi) continue;
      const GroupElement w = ball.element(begin + k);
      const HomeoExpr w_inv = realize(act, inverse(p, w));
      // Among the samples, keep the pair leaving the most room around x and
      // its image: min(x - lo, hi - g(x), (g(x) - x) / 2).
      std::optional<MovingPair> best;
      mpq_class best_score = 0;
      for (const auto& y : sample_points(Interval::open(RealNum(lo), RealNum(hi)), 9)) {
        const RealNum x = eval(w_inv, y);
        if (!u.certainly_contains(x) || !u.certainly_contains(y)) continue;
        const bool forward = certainly_less(x, y);
        if (!forward && !certainly_less(y, x)) continue;
        const mpq_class from = (forward ? x : y).midpoint_rational();
        const mpq_class to = (forward ? y : x).midpoint_rational();
        const mpq_class score = std::min({mpq_class(from - lo_q(u)), mpq_class(hi_q(u) - to), mpq_class((to - from) / 2)});
        if (!best || score > best_score) {
          best = MovingPair{forward ? w : inverse(p, w), forward ? x : y};
          best_score = score;
        }
      }
      if (best) return best;
    }
  }
  return std::nullopt;
}

// Images of both endpoints of (p, q) under every nonidentity word of the ball.
std::vector<std::pair<RealNum, RealNum>> endpoint_images(const Action& act, const Ball& ball, const mpq_class& p,
                                                         const mpq_class& q, unsigned workers) {
  std::vector<std::pair<RealNum, RealNum>> all(ball.size());
  all[0] = {RealNum(p), RealNum(q)};
  for (unsigned len = 1; len <= ball.radius(); ++len) {
    const std::size_t begin = ball.layer_begin(len);
    const std::size_t end = ball.layer_begin(len + 1);
    parallel_for(end - begin, workers, [&](std::size_t k) {
      const std::size_t i = begin + k;
      const HomeoExpr& h = act.letter_image(ball.first_letter(i));
      const auto& prev = all[ball.parent(i)];
      all[i] = {eval(h, prev.first), eval(h, prev.second)};
    });
  }
  return all;
}

// Largest gap between consecutive values of a sorted list.
std::pair<mpq_class, mpq_class> largest_gap(const std::vector<mpq_class>& sorted) {
  std::pair<mpq_class, mpq_class> best{sorted.front(), sorted.front()};
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] > best.second - best.first) best = {sorted[i - 1], sorted[i]};
  }
  return best;
}

// Orbit points u(a), u in the ball, a on the grid {m / n : 0 <= m <= n}, lying in closure(v).
std::vector<mpq_class> grid_orbit_in(const Action& act, const Ball& ball, long n, const Interval& v, unsigned workers) {
  const Interval cv = v.closure();
  std::vector<std::vector<mpq_class>> found(ball.size());
  parallel_for(ball.size(), workers, [&](std::size_t i) {
    const GroupElement w = ball.element(i);
    const HomeoExpr h = realize(act, w);
    const Interval pre = eval_interval(inverse(h), cv);
    const mpq_class lo = pre.lo().value.lower().to_rational() * n;
    const mpq_class hi = pre.hi().value.upper().to_rational() * n;
    mpz_class m_lo, m_hi;
    mpz_fdiv_q(m_lo.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_cdiv_q(m_hi.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    if (m_lo < 0) m_lo = 0;
    if (m_hi > n) m_hi = n;
    for (mpz_class m = m_lo; m <= m_hi; ++m) {
      mpq_class a(m, n);
      a.canonicalize();
      const RealNum y = eval(h, RealNum(a));
      if (cv.certainly_contains(y)) found[i].push_back(y.midpoint_rational());
    }
  });
  std::vector<mpq_class> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Interval> lambda_of(const Action& act, const std::vector<GroupElement>& elements, const Interval& u) {
  std::vector<Interval> out;
  for (const auto& g : elements) out.push_back(eval_interval(realize(act, g), u.closure()));
  std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return lo_q(a) < lo_q(b); });
  return out;
}

}  // namespace

CantorLadder cantor_ladder(const Action& act, std::size_t depth, const Interval& seed, const CantorParams& params) {
  if (seed.is_empty() || !seed.is_finite() || !certainly_less(seed.lo().value, seed.hi().value)) {
    throw Error(ErrorCode::WindowDegenerate, "seed interval must be nonempty and finite");
  }
  if (depth == 0) throw Error(ErrorCode::BadParameter, "depth must be positive");
  const Presentation& p = act.presentation();
  CantorLadder ladder;
  ladder.depth = depth;
  ladder.radius = params.radius;
  ladder.seed = seed;
  const Ball check_ball(p, params.radius);

  Interval previous = seed;
  std::vector<GroupElement> elements{Ball(p, 0).element(0)};
  for (std::size_t i = 1; i <= depth; ++i) {
    auto fail = [&](const std::string& why) {
      ladder.diagnosis = "level " + std::to_string(i) + ": " + why;
      ladder.check = check_cantor_ladder(act, ladder, params);
      return ladder;
    };

    const auto pair = find_moving_pair(act, previous, params);
    if (!pair) {
      if (i == 1) {
        throw Error(ErrorCode::NoMovingPair, "no word of length <= " + std::to_string(params.search_radius) +
                                                 " moves a point of " + seed.to_string() + " rightward inside it");
      }
      return fail("no moving pair inside " + previous.to_string() + " up to length " +
                  std::to_string(params.search_radius));
    }
    CantorLevel level;
    level.g = pair->word;
    level.x = pair->x;
    const HomeoExpr g = realize(act, level.g);

    // V: shrink around x until closure(V) and g(closure(V)) separate inside the previous U.
    const mpq_class x = pair->x.midpoint_rational();
    mpq_class delta = std::min(x - lo_q(previous), hi_q(previous) - x) / 2;
    bool placed = false;
    for (int iter = 0; iter < 256 && !placed; ++iter, delta /= 2) {
      const Interval v = Interval::open(RealNum(mpq_class(x - delta)), RealNum(mpq_class(x + delta)));
      const Interval cv = v.closure();
      const Interval gv = eval_interval(g, cv);
      if (certainly_subset(cv, previous) && certainly_subset(gv, previous) && overlap(cv, gv) == Overlap::Disjoint) {
        level.v = v;
        placed = true;
      }
    }
    if (!placed) return fail("no neighbourhood of the moving point separates from its image");

    // Grid of spacing 1/i_i < diam(V)/2 and i_i > i.
    const mpq_class diam = hi_q(level.v) - lo_q(level.v);
    const mpq_class ratio = mpq_class(2) / diam;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    level.grid = std::max<long>(static_cast<long>(i) + 1, fl.get_si() + 1);

    std::vector<mpq_class> pts = grid_orbit_in(act, check_ball, level.grid, level.v, params.workers);
    if (pts.size() < 2) return fail("fewer than two grid orbit points inside " + level.v.to_string());
    auto [a, b] = largest_gap(pts);

    // Refine until every ball word maps (a, b) onto itself or off itself.
    bool stable = false;
    for (unsigned round = 0; round < params.max_refinements && !stable; ++round) {
      const auto images = endpoint_images(act, check_ball, a, b, params.workers);
      const RealNum ra(a);
      const RealNum rb(b);
      std::set<mpq_class> inside;
      for (std::size_t k = 1; k < images.size(); ++k) {
        for (const RealNum* y : {&images[k].first, &images[k].second}) {
          if (certainly_within(*y, ra, params.tol) || certainly_within(*y, rb, params.tol)) continue;
          if (certainly_less_equal(*y, ra) || certainly_less_equal(rb, *y)) continue;
          inside.insert(y->midpoint_rational());
        }
      }
      if (inside.empty()) {
        stable = true;
        break;
      }
      std::vector<mpq_class> cuts{a};
      for (const auto& q : inside) {
        if (q > a && q < b) cuts.push_back(q);
      }
      cuts.push_back(b);
      std::tie(a, b) = largest_gap(cuts);
    }
    if (!stable) return fail("gap refinement did not settle after " + std::to_string(params.max_refinements) + " rounds");
    level.u = Interval::open(RealNum(a), RealNum(b));

    const std::size_t before = elements.size();
    for (std::size_t e = 0; e < before; ++e) elements.push_back(multiply(p, elements[e], level.g));
    level.elements = elements;
    level.lambda = lambda_of(act, elements, level.u);
    ladder.levels.push_back(std::move(level));
    previous = ladder.levels.back().u;
  }
  ladder.complete = true;
  ladder.check = check_cantor_ladder(act, ladder, params);
  return ladder;
}

CantorCheck check_cantor_ladder(const Action& act, const CantorLadder& ladder, const CantorParams& params) {
  CantorCheck check;
  const Presentation& p = act.presentation();
  const Ball ball(p, ladder.radius, Ball::Mode::ReducedWords);
  const Interval unit = Interval::closed(RealNum(0), RealNum(1));
  auto record = [&](std::string name, bool ok) { check.items.emplace_back(std::move(name), ok); };

  Interval previous = ladder.seed;
  std::optional<std::vector<Interval>> previous_lambda;
  for (std::size_t idx = 0; idx < ladder.levels.size(); ++idx) {
    const CantorLevel& lv = ladder.levels[idx];
    const std::string tag = " level " + std::to_string(idx + 1);
    const Interval cu = lv.u.closure();
    const Interval gu = eval_interval(realize(act, lv.g), cu);

    record("(1)" + tag, certainly_subset(lv.u, previous));
    record("(4)" + tag, overlap(cu, gu) == Overlap::Disjoint && certainly_subset(cu, previous) &&
                            certainly_subset(gu, previous));

    std::vector<char> ok2(ball.size(), 1);
    std::vector<char> ok3(ball.size(), 1);
    const RealNum bound = RealNum::rational(1, static_cast<long>(idx + 1));
    parallel_for(ball.size(), params.workers, [&](std::size_t i) {
      const Interval img = eval_interval(realize(act, ball.letters(i)), lv.u);
      ok2[i] = overlap(img, lv.u) == Overlap::Disjoint || approximately_equal(img, lv.u, params.tol);
      const Interval clipped = clip_midpoints(img, unit);
      ok3[i] = clipped.is_empty() || certainly_less(clipped.diameter(), bound);
    });
    record("(2)" + tag, std::all_of(ok2.begin(), ok2.end(), [](char c) { return c != 0; }));
    record("(3)" + tag, std::all_of(ok3.begin(), ok3.end(), [](char c) { return c != 0; }));

    const std::size_t expected = std::size_t{1} << (idx + 1);
    bool distinct = true;
    if (p.has_normal_form()) {
      std::set<std::string> keys;
      for (const auto& g : lv.elements) keys.insert(canonical_key(canonical_form(p, g.letters())));
      distinct = keys.size() == expected;
    }
    record("|G_i| = 2^i" + tag, lv.elements.size() == expected && distinct);

    const std::vector<Interval> lambda = lambda_of(act, lv.elements, lv.u);
    bool disjoint = lambda.size() == expected;
    for (std::size_t k = 1; k < lambda.size(); ++k) {
      disjoint = disjoint && overlap(lambda[k - 1], lambda[k]) == Overlap::Disjoint;
    }
    record("Lambda_i disjoint" + tag, disjoint);
    if (previous_lambda) {
      bool nested = true;
      for (const auto& c : lambda) {
        nested = nested && std::any_of(previous_lambda->begin(), previous_lambda->end(),
                                       [&](const Interval& big) { return certainly_subset(c, big); });
      }
      record("Lambda_i nested" + tag, nested);
    }
    previous = lv.u;
    previous_lambda = lambda;
  }
  check.passed = !check.items.empty() &&
                 std::all_of(check.items.begin(), check.items.end(), [](const auto& it) { return it.second; });
  return check;
}

}  // namespace lineact
