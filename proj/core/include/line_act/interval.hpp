#pragma once

#include <optional>
#include <string>

#include "line_act/real.hpp"

namespace lineact {

/// An endpoint of an interval: a finite value or one of the two infinities.
struct Endpoint {
  enum class Kind { NegInf, Finite, PosInf };

  Kind kind = Kind::Finite;
  RealNum value;
  bool open = true;

  static Endpoint neg_inf() { return {Kind::NegInf, RealNum(), true}; }
  static Endpoint pos_inf() { return {Kind::PosInf, RealNum(), true}; }
  static Endpoint finite(RealNum v, bool open) { return {Kind::Finite, std::move(v), open}; }

  bool is_finite() const { return kind == Kind::Finite; }
};

/// Interval of the extended line with per-endpoint openness, or the empty set.
class Interval {
 public:
  Interval() = default;  // empty

  static Interval empty() { return Interval(); }
  static Interval open(RealNum lo, RealNum hi);
  static Interval closed(RealNum lo, RealNum hi);
  static Interval whole();
  /// Validates lo < hi when both ends are finite and comparable.
  static Interval make(Endpoint lo, Endpoint hi);

  bool is_empty() const { return !ends_.has_value(); }
  bool is_finite() const;
  const Endpoint& lo() const { return ends_->first; }
  const Endpoint& hi() const { return ends_->second; }

  /// hi - lo; the interval must be finite.
  RealNum diameter() const;
  RealNum center() const;

  Interval closure() const;
  Interval interior() const;

  /// True when every value of x certainly lies in the interval.
  bool certainly_contains(const RealNum& x) const;

  /// `(lo, hi]`-style rendering with `-inf`/`inf` for infinite ends.
  std::string to_string() const;

 private:
  std::optional<std::pair<Endpoint, Endpoint>> ends_;
};

enum class Overlap { Disjoint, Intersecting, Unknown };

/// Rigorous disjointness test; endpoints touching at an open end are disjoint.
Overlap overlap(const Interval& a, const Interval& b);

/// True when a is certainly contained in b.
bool certainly_subset(const Interval& a, const Interval& b);

/// True when the endpoints of a and b agree to within tol (both finite or
/// matching infinities) and the openness flags coincide.
bool approximately_equal(const Interval& a, const Interval& b, const RealNum& tol);

/// Intersection with a finite closed window, computed on rational midpoints.
/// Used for diameter estimates only; returns empty when the overlap is empty.
Interval clip_midpoints(const Interval& a, const Interval& window);

}  // namespace lineact
