#pragma once

#include <string>

#include "line_act/dynamics.hpp"

namespace lineact {

enum class OrbitClosure { FixedPoint, DiscreteSequence, CantorLike, Dense };
std::string to_string(OrbitClosure c);

struct ClassifyThresholds {
  /// Dense when the coverage gap is below this fraction of the window diameter.
  double dense_fraction = 0.05;
  /// Discrete when the smallest spacing exceeds this fraction of the median spacing.
  double spacing_fraction = 0.2;
  /// Discrete also needs |orbit(L)| / |orbit(L/2)| at most this (linear growth gives about 2).
  double growth_limit = 2.5;
};

struct OrbitClosureClass {
  OrbitClosure kind = OrbitClosure::CantorLike;
  bool best_effort = false;  // set for CantorLike
  std::size_t points_in_window = 0;
  std::size_t orbit_size = 0;       // at radius L
  std::size_t half_orbit_size = 0;  // at radius floor(L/2)
  double growth = 0;
  double coverage_gap = 0;
  double min_spacing = 0;
  double median_spacing = 0;
  double max_spacing = 0;
};

/// Classifies the closure of the orbit of x from the ball of radius L, seen
/// through a finite window. Checks run in the order FixedPoint, Dense,
/// DiscreteSequence; anything else is reported as CantorLike.
OrbitClosureClass classify_orbit_closure(const Action& act, const RealNum& x, unsigned radius,
                                         const Interval& window, const ClassifyThresholds& thresholds = {},
                                         unsigned workers = 1);

}  // namespace lineact
