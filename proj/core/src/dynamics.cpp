#include "line_act/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "line_act/error.hpp"
#include "line_act/parallel.hpp"

namespace lineact {

namespace {

void require_finite_open(const Interval& i, const char* what) {
  if (i.is_empty() || !i.is_finite() || !certainly_less(i.lo().value, i.hi().value)) {
    throw Error(ErrorCode::WindowDegenerate, std::string(what) + " must be a nonempty finite interval");
  }
}

// Overlap of h(u) with v, raising the precision while undecided.
Overlap decided_overlap(const HomeoExpr& h, const Interval& u, const Interval& v) {
  for (Precision bits = working_precision() * 2; bits <= kPrecisionCeiling; bits *= 2) {
    PrecisionScope scope(bits);
    const Overlap o = overlap(eval_interval(h, u), v);
    if (o != Overlap::Unknown) return o;
  }
  return Overlap::Unknown;
}

// Images of `seed` under every node of one ball layer, from the previous layer's images.
template <typename T, typename Apply>
std::vector<T> next_layer(const Ball& ball, unsigned len, const std::vector<T>& prev, unsigned workers, Apply apply) {
  const std::size_t begin = ball.layer_begin(len);
  const std::size_t end = ball.layer_begin(len + 1);
  const std::size_t prev_begin = ball.layer_begin(len - 1);
  std::vector<T> out(end - begin);
  parallel_for(end - begin, workers, [&](std::size_t k) {
    const std::size_t i = begin + k;
    out[k] = apply(ball.first_letter(i), prev[ball.parent(i) - prev_begin]);
  });
  return out;
}

}  // namespace

std::vector<OrbitPoint> orbit(const Action& act, const RealNum& x, unsigned radius, unsigned workers) {
  Ball ball(act.presentation(), 0);
  std::vector<RealNum> values{x};
  std::vector<RealNum> layer{x};
  for (unsigned len = 1; len <= radius; ++len) {
    ball.grow();
    layer = next_layer(ball, len, layer, workers,
                       [&](Letter l, const RealNum& y) { return eval(act.letter_image(l), y); });
    values.insert(values.end(), layer.begin(), layer.end());
  }

  std::vector<mpq_class> keys(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) keys[i] = values[i].midpoint_rational();
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int c = cmp(keys[a], keys[b]);
    return c != 0 ? c < 0 : a < b;
  });

  std::vector<OrbitPoint> out;
  std::size_t group_best = order.front();
  std::size_t previous = order.front();
  auto flush = [&] { out.push_back({values[group_best], ball.element(group_best)}); };
  for (std::size_t k = 1; k < order.size(); ++k) {
    const std::size_t i = order[k];
    const Order o = compare(values[previous], values[i]);
    if (o == Order::Equal || o == Order::Unknown) {
      group_best = std::min(group_best, i);
    } else {
      flush();
      group_best = i;
    }
    previous = i;
  }
  flush();
  return out;
}

RealNum coverage_gap(const std::vector<RealNum>& points, const Interval& interval) {
  if (interval.is_empty() || !interval.is_finite()) {
    throw Error(ErrorCode::WindowDegenerate, "coverage window must be finite");
  }
  const mpq_class lo = interval.lo().value.midpoint_rational();
  const mpq_class hi = interval.hi().value.midpoint_rational();
  std::vector<mpq_class> inside{lo, hi};
  for (const auto& p : points) {
    mpq_class q = p.midpoint_rational();
    if (q > lo && q < hi) inside.push_back(std::move(q));
  }
  std::sort(inside.begin(), inside.end());
  mpq_class gap = 0;
  for (std::size_t i = 1; i < inside.size(); ++i) {
    const mpq_class d = inside[i] - inside[i - 1];
    if (d > gap) gap = d;
  }
  return RealNum(gap);
}

RealNum coverage_gap(const std::vector<OrbitPoint>& points, const Interval& interval) {
  std::vector<RealNum> xs;
  xs.reserve(points.size());
  for (const auto& p : points) xs.push_back(p.x);
  return coverage_gap(xs, interval);
}

std::optional<TransitivityWitness> transitivity_search(const Action& act, const Interval& u, const Interval& v,
                                                        unsigned radius, unsigned workers) {
  require_finite_open(u, "source interval");
  require_finite_open(v, "target interval");
  Ball ball(act.presentation(), 0);
  if (overlap(u, v) == Overlap::Intersecting) return TransitivityWitness{ball.element(0), u, 0};
  std::vector<Interval> layer{u};
  for (unsigned len = 1; len <= radius; ++len) {
    ball.grow();
    layer = next_layer(ball, len, layer, workers,
                       [&](Letter l, const Interval& j) { return eval_interval(act.letter_image(l), j); });
    const std::size_t begin = ball.layer_begin(len);
    for (std::size_t k = 0; k < layer.size(); ++k) {
      Overlap o = overlap(layer[k], v);
      if (o == Overlap::Unknown) o = decided_overlap(realize(act, ball.letters(begin + k)), u, v);
      if (o == Overlap::Intersecting) return TransitivityWitness{ball.element(begin + k), layer[k], len};
    }
  }
  return std::nullopt;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Disjoint:
      return "disjoint";
    case Verdict::PointwiseFixed:
      return "pointwise-fixed";
    case Verdict::Violation:
      return "violation";
  }
  return "violation";
}

WanderingCertificate wandering_certificate(const Action& act, const Interval& j, unsigned radius,
                                           const CertificateOptions& options) {
  require_finite_open(j, "wandering candidate");
  WanderingCertificate cert;
  cert.interval = j;
  cert.radius = radius;
  cert.grid_n = options.grid_n;
  cert.tol = options.tol;
  cert.dedup_elements = options.dedup_elements;

  Ball ball(act.presentation(), 0, options.dedup_elements ? Ball::Mode::Elements : Ball::Mode::ReducedWords);
  std::vector<Interval> layer{j};
  for (unsigned len = 1; len <= radius; ++len) {
    ball.grow();
    layer = next_layer(ball, len, layer, options.workers,
                       [&](Letter l, const Interval& x) { return eval_interval(act.letter_image(l), x); });
    const std::size_t begin = ball.layer_begin(len);
    std::vector<WordVerdict> verdicts(layer.size());
    parallel_for(layer.size(), options.workers, [&](std::size_t k) {
      WordVerdict& out = verdicts[k];
      out.word = ball.element(begin + k);
      Overlap o = overlap(layer[k], j);
      if (o == Overlap::Disjoint) {
        out.verdict = Verdict::Disjoint;
        return;
      }
      const HomeoExpr h = realize(act, ball.letters(begin + k));
      if (o == Overlap::Unknown) o = decided_overlap(h, j, j);
      if (o == Overlap::Disjoint) {
        out.verdict = Verdict::Disjoint;
        return;
      }
      if (o == Overlap::Unknown) {
        out.undecided = true;
        return;
      }
      try {
        if (is_identity_on(h, j, options.grid_n, options.tol)) out.verdict = Verdict::PointwiseFixed;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PrecisionExhausted) throw;
        out.undecided = true;
      }
    });
    for (auto& v : verdicts) {
      if (v.verdict == Verdict::Violation && !cert.witness) cert.witness = v.word;
      cert.verdicts.push_back(std::move(v));
    }
  }
  cert.certified = !cert.witness.has_value();
  return cert;
}

namespace {

// Generator indices f_0, ..., f_{k-1} of the normal series, outermost first.
std::optional<std::vector<unsigned>> wandering_chain(const Presentation& p) {
  switch (p.kind()) {
    case Presentation::Kind::BaumslagSolitar:
      if (p.bs_n() == -1) return std::vector<unsigned>{1, 0};
      return std::nullopt;
    case Presentation::Kind::Ladder: {
      if (!p.has_normal_form()) return std::nullopt;
      for (int n : p.ladder_name()) {
        if (n != -1) return std::nullopt;
      }
      std::vector<unsigned> chain(p.rank());
      std::iota(chain.begin(), chain.end(), 0u);
      return chain;
    }
    case Presentation::Kind::Free:
    case Presentation::Kind::FreeAbelian:
      if (p.rank() == 1) return std::vector<unsigned>{0};
      return std::nullopt;
  }
  return std::nullopt;
}

struct Component {
  Interval range;
  bool lo_fixed = false;  // end is a fixed point rather than the window edge
  bool hi_fixed = false;
};

std::vector<Component> fix_components(const HomeoExpr& f, const Interval& window, const WanderingParams& params) {
  const FixReport rep = fixed_points(f, window, params.grid_n, params.fix_tol);
  std::vector<Component> out;
  for (const auto& c : rep.complement_intervals) {
    Component comp{c, !identical(c.lo().value, window.lo().value), !identical(c.hi().value, window.hi().value)};
    if (!comp.lo_fixed) comp.lo_fixed = displacement_within(f, c.lo().value, params.fix_tol);
    if (!comp.hi_fixed) comp.hi_fixed = displacement_within(f, c.hi().value, params.fix_tol);
    out.push_back(std::move(comp));
  }
  return out;
}

mpq_class distance_to(const Interval& i, const mpq_class& x) {
  const mpq_class lo = i.lo().value.midpoint_rational();
  const mpq_class hi = i.hi().value.midpoint_rational();
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0;
}

// Component nearest the window center; components bounded by fixed points
// are preferred, ties go to the larger lower end.
const Component& nearest_component(const std::vector<Component>& comps, const Interval& window) {
  const mpq_class center = window.center().midpoint_rational();
  const Component* best = nullptr;
  for (const auto& c : comps) {
    if (best == nullptr) {
      best = &c;
      continue;
    }
    const bool c_inner = c.lo_fixed && c.hi_fixed;
    const bool b_inner = best->lo_fixed && best->hi_fixed;
    if (c_inner != b_inner) {
      if (c_inner) best = &c;
      continue;
    }
    const int d = cmp(distance_to(c.range, center), distance_to(best->range, center));
    if (d < 0 || (d == 0 && c.range.lo().value.midpoint_rational() > best->range.lo().value.midpoint_rational())) {
      best = &c;
    }
  }
  return *best;
}

Interval shrink_by(const Interval& i, const RealNum& tol) {
  const RealNum lo = i.lo().value + tol;
  const RealNum hi = i.hi().value - tol;
  if (!certainly_less(lo, hi)) return i;
  return Interval::open(lo, hi);
}

bool ends_match(const Interval& image, const Component& c, const RealNum& tol) {
  if (c.lo_fixed && !certainly_within(image.lo().value, c.range.lo().value, tol)) return false;
  if (c.hi_fixed && !certainly_within(image.hi().value, c.range.hi().value, tol)) return false;
  return true;
}

// Sample of Fix(f) inside the window: isolated fixed points and points of fixed intervals.
std::vector<RealNum> fix_samples(const HomeoExpr& f, const Interval& window, const WanderingParams& params) {
  const FixReport rep = fixed_points(f, window, params.grid_n, params.fix_tol);
  std::vector<RealNum> all = rep.fixed_points;
  for (const auto& i : rep.fixed_intervals) {
    if (certainly_less(i.lo().value, i.hi().value)) {
      for (auto& x : sample_points(i, 3)) all.push_back(std::move(x));
    } else {
      all.push_back(i.lo().value);
    }
  }
  if (all.size() <= params.claim_samples) return all;
  std::vector<RealNum> picked;
  for (std::size_t s = 0; s < params.claim_samples; ++s) {
    picked.push_back(all[s * (all.size() - 1) / (params.claim_samples - 1)]);
  }
  return picked;
}

[[noreturn]] void claim_failed(const std::string& claim) { throw Error(ErrorCode::ConstructionFailed, claim); }

}  // namespace

WanderingResult find_wandering_interval(const Action& act, const Interval& window, const WanderingParams& params) {
  require_finite_open(window, "search window");
  const Presentation& p = act.presentation();
  WanderingResult result;

  auto trivial_on_window = [&](const HomeoExpr& f) { return is_identity_on(f, window, params.grid_n, params.fix_tol); };
  bool all_trivial = true;
  for (const auto& f : act.images()) all_trivial = all_trivial && trivial_on_window(f);
  if (all_trivial) {
    result.j = window;
    result.trivial_action = true;
    return result;
  }

  auto chain_opt = wandering_chain(p);
  if (!chain_opt) {
    throw Error(ErrorCode::NotApplicable, "presentation '" + p.to_string() +
                                              "' is outside the BS(1,-1) / ladder (-1, ..., -1) family");
  }
  std::vector<unsigned> chain = *chain_opt;
  while (!chain.empty() && trivial_on_window(act.image(chain.back()))) chain.pop_back();
  const std::size_t k = chain.size();
  auto f = [&](std::size_t i) -> const HomeoExpr& { return act.image(chain[i]); };
  auto label = [&](std::size_t i) { return p.labels().at(chain[i]); };

  // J[k-1] from the innermost generator, then each J[i] is the Fix(f_i)
  // complement component holding J[i+1].
  std::vector<Component> comps(k);
  {
    const auto all = fix_components(f(k - 1), window, params);
    if (all.empty()) claim_failed("Fix(" + label(k - 1) + ") covers the window");
    comps[k - 1] = nearest_component(all, window);
    result.steps.push_back({label(k - 1), comps[k - 1].range, "maximal interval of the complement of Fix(" +
                                                                  label(k - 1) + ") nearest the window center"});
  }
  for (std::size_t i = k - 1; i-- > 1;) {
    const auto all = fix_components(f(i), window, params);
    const Component* holder = nullptr;
    for (const auto& c : all) {
      if (certainly_subset(comps[i + 1].range, c.range)) holder = &c;
    }
    if (holder == nullptr) {
      claim_failed("no component of the complement of Fix(" + label(i) + ") contains " +
                   comps[i + 1].range.to_string());
    }
    comps[i] = *holder;
    result.steps.push_back({label(i), comps[i].range, "component of the complement of Fix(" + label(i) +
                                                          ") containing the previous interval"});
  }

  // Claims on each level: f_{i-1} moves J[i] off itself, f_j (j >= i) keeps
  // it, and f_{i-1} preserves Fix(f_i).
  for (std::size_t i = k - 1; i >= 1; --i) {
    const Interval& ji = comps[i].range;
    const Interval inner = shrink_by(ji, params.claim_tol);
    if (overlap(eval_interval(f(i - 1), inner), inner) != Overlap::Disjoint) {
      claim_failed(label(i - 1) + " maps " + ji.to_string() + " onto an overlapping interval");
    }
    result.steps.push_back({label(i - 1), ji, label(i - 1) + "(J) is disjoint from J"});
    for (std::size_t jdx = i; jdx < k; ++jdx) {
      if (!ends_match(eval_interval(f(jdx), ji), comps[i], params.claim_tol)) {
        claim_failed(label(jdx) + " does not preserve " + ji.to_string());
      }
    }
    const HomeoExpr outer_inv = inverse(f(i - 1));
    for (const auto& x : fix_samples(f(i), window, params)) {
      for (const HomeoExpr* g : {&f(i - 1), &outer_inv}) {
        if (!displacement_within(f(i), eval(*g, x), params.claim_tol)) {
          claim_failed(label(i - 1) + " does not preserve Fix(" + label(i) + ") near " + x.to_string());
        }
      }
    }
    result.steps.push_back({label(i - 1), ji, label(i - 1) + " preserves Fix(" + label(i) + ") on samples"});
  }

  // Shrink around the center of J[k-1] until the innermost generator moves it off itself.
  const HomeoExpr& g = f(k - 1);
  const Interval& base = comps[k - 1].range;
  const RealNum mid(base.center().midpoint_rational());
  RealNum delta(mpq_class(base.diameter().midpoint_rational() / 4));
  bool found = false;
  for (int iter = 0; iter < 200 && !found; ++iter) {
    const Interval cand = Interval::open(mid - delta, mid + delta);
    if (certainly_subset(cand, base) && overlap(eval_interval(g, cand), cand) == Overlap::Disjoint) {
      result.j = cand;
      found = true;
    } else {
      delta = delta / RealNum(2);
    }
  }
  if (!found) claim_failed("no subinterval of " + base.to_string() + " is moved off itself by " + label(k - 1));
  result.steps.push_back({label(k - 1), result.j, label(k - 1) + "(J) is disjoint from J"});

  if (params.verify_radius > 0) {
    result.certificate = wandering_certificate(act, result.j, params.verify_radius);
    if (!result.certificate->certified) {
      claim_failed("interval " + result.j.to_string() + " is refuted at radius " +
                   std::to_string(params.verify_radius) + " by " +
                   word_to_string(p, *result.certificate->witness));
    }
  }
  return result;
}

std::string to_string(DichotomyResult::Outcome o) {
  switch (o) {
    case DichotomyResult::Outcome::TransitiveAtDepth:
      return "transitive-at-depth";
    case DichotomyResult::Outcome::WanderingAtDepth:
      return "wandering-at-depth";
    case DichotomyResult::Outcome::Unresolved:
      return "unresolved";
  }
  return "unresolved";
}

namespace {

// Random open interval in [-3, 3] with rational endpoints (hundredths) and width in [0.1, 0.4].
Interval random_interval(std::mt19937_64& rng) {
  const long width = 10 + static_cast<long>(rng() % 31);
  const long lo = -300 + static_cast<long>(rng() % static_cast<std::uint64_t>(601 - width));
  return Interval::open(RealNum::rational(lo, 100), RealNum::rational(lo + width, 100));
}

}  // namespace

DichotomyResult resolve_dichotomy(const Action& act, const DichotomyOptions& options) {
  DichotomyResult result;
  std::mt19937_64 rng(options.seed);
  bool all_found = true;
  for (std::size_t i = 0; i < options.pairs; ++i) {
    PairOutcome pair{random_interval(rng), random_interval(rng), std::nullopt};
    pair.witness = transitivity_search(act, pair.u, pair.v, options.max_radius, options.workers);
    all_found = all_found && pair.witness.has_value();
    result.pairs.push_back(std::move(pair));
  }

  std::vector<Interval> candidates;
  try {
    candidates.push_back(
        find_wandering_interval(act, Interval::open(RealNum(-4), RealNum(4))).j);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotApplicable && e.code() != ErrorCode::ConstructionFailed) throw;
  }
  candidates.insert(candidates.end(), options.candidates.begin(), options.candidates.end());
  CertificateOptions copts;
  copts.workers = options.workers;
  for (const auto& j : candidates) {
    WanderingCertificate cert = wandering_certificate(act, j, options.certify_radius, copts);
    const bool ok = cert.certified;
    if (ok || !result.certificate) result.certificate = std::move(cert);
    if (ok) break;
  }

  if (all_found) {
    result.outcome = DichotomyResult::Outcome::TransitiveAtDepth;
  } else if (result.certificate && result.certificate->certified) {
    result.outcome = DichotomyResult::Outcome::WanderingAtDepth;
  }
  return result;
}

}  // namespace lineact
