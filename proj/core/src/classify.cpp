#include "line_act/classify.hpp"

#include <algorithm>

#include "line_act/error.hpp"

namespace lineact {

std::string to_string(OrbitClosure c) {
  switch (c) {
    case OrbitClosure::FixedPoint:
      return "fixed-point";
    case OrbitClosure::DiscreteSequence:
      return "discrete-sequence";
    case OrbitClosure::CantorLike:
      return "cantor-like";
    case OrbitClosure::Dense:
      return "dense";
  }
  return "cantor-like";
}

OrbitClosureClass classify_orbit_closure(const Action& act, const RealNum& x, unsigned radius,
                                         const Interval& window, const ClassifyThresholds& thresholds,
                                         unsigned workers) {
  if (window.is_empty() || !window.is_finite() || !certainly_less(window.lo().value, window.hi().value)) {
    throw Error(ErrorCode::WindowDegenerate, "classification window must be finite");
  }
  OrbitClosureClass out;
  const auto full = orbit(act, x, radius, workers);
  const auto half = orbit(act, x, radius / 2, workers);
  out.orbit_size = full.size();
  out.half_orbit_size = half.size();
  out.growth = static_cast<double>(full.size()) / static_cast<double>(half.size());

  const mpq_class lo = window.lo().value.midpoint_rational();
  const mpq_class hi = window.hi().value.midpoint_rational();
  std::vector<mpq_class> inside;
  for (const auto& p : full) {
    const mpq_class q = p.x.midpoint_rational();
    if (q >= lo && q <= hi) inside.push_back(q);
  }
  out.points_in_window = inside.size();
  const double diam = mpq_class(hi - lo).get_d();
  out.coverage_gap = coverage_gap(full, window).to_double();

  std::vector<double> spacing;
  for (std::size_t i = 1; i < inside.size(); ++i) spacing.push_back(mpq_class(inside[i] - inside[i - 1]).get_d());
  if (!spacing.empty()) {
    std::vector<double> sorted = spacing;
    std::sort(sorted.begin(), sorted.end());
    out.min_spacing = sorted.front();
    out.max_spacing = sorted.back();
    out.median_spacing = sorted[sorted.size() / 2];
  }

  if (full.size() == 1) {
    out.kind = OrbitClosure::FixedPoint;
  } else if (out.coverage_gap < thresholds.dense_fraction * diam) {
    out.kind = OrbitClosure::Dense;
  } else if (!spacing.empty() && out.min_spacing > thresholds.spacing_fraction * out.median_spacing &&
             out.growth <= thresholds.growth_limit) {
    out.kind = OrbitClosure::DiscreteSequence;
  } else {
    out.kind = OrbitClosure::CantorLike;
    out.best_effort = true;
  }
  return out;
}

}  // namespace lineact
