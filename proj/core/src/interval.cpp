#include "line_act/interval.hpp"

#include "line_act/error.hpp"

namespace lineact {

Interval Interval::open(RealNum lo, RealNum hi) {
  return make(Endpoint::finite(std::move(lo), true), Endpoint::finite(std::move(hi), true));
}

Interval Interval::closed(RealNum lo, RealNum hi) {
  return make(Endpoint::finite(std::move(lo), false), Endpoint::finite(std::move(hi), false));
}

Interval Interval::whole() { return make(Endpoint::neg_inf(), Endpoint::pos_inf()); }

Interval Interval::make(Endpoint lo, Endpoint hi) {
  if (lo.kind == Endpoint::Kind::PosInf || hi.kind == Endpoint::Kind::NegInf) {
    throw Error(ErrorCode::BadParameter, "interval endpoints out of order");
  }
  if (!lo.is_finite()) lo.open = true;
  if (!hi.is_finite()) hi.open = true;
  if (lo.is_finite() && hi.is_finite()) {
    const Order o = compare(lo.value, hi.value);
    if (o == Order::Greater) throw Error(ErrorCode::BadParameter, "interval endpoints out of order");
    if (o == Order::Equal && (lo.open || hi.open)) return Interval();
  }
  Interval r;
  r.ends_.emplace(std::move(lo), std::move(hi));
  return r;
}

bool Interval::is_finite() const { return !is_empty() && lo().is_finite() && hi().is_finite(); }

RealNum Interval::diameter() const {
  if (!is_finite()) throw Error(ErrorCode::Domain, "diameter of an unbounded interval");
  return hi().value - lo().value;
}

RealNum Interval::center() const {
  if (!is_finite()) throw Error(ErrorCode::Domain, "center of an unbounded interval");
  return (lo().value + hi().value) / RealNum(2);
}

Interval Interval::closure() const {
  if (is_empty()) return *this;
  Endpoint a = lo();
  Endpoint b = hi();
  if (a.is_finite()) a.open = false;
  if (b.is_finite()) b.open = false;
  return make(std::move(a), std::move(b));
}

Interval Interval::interior() const {
  if (is_empty()) return *this;
  Endpoint a = lo();
  Endpoint b = hi();
  a.open = true;
  b.open = true;
  return make(std::move(a), std::move(b));
}

bool Interval::certainly_contains(const RealNum& x) const {
  if (is_empty()) return false;
  if (lo().is_finite()) {
    if (lo().open ? !certainly_less(lo().value, x) : !certainly_less_equal(lo().value, x)) return false;
  }
  if (hi().is_finite()) {
    if (hi().open ? !certainly_less(x, hi().value) : !certainly_less_equal(x, hi().value)) return false;
  }
  return true;
}

std::string Interval::to_string() const {
  if (is_empty()) return "empty";
  auto end_text = [](const Endpoint& e) -> std::string {
    switch (e.kind) {
      case Endpoint::Kind::NegInf: return "-inf";
      case Endpoint::Kind::PosInf: return "inf";
      case Endpoint::Kind::Finite: return e.value.to_string();
    }
    return "";
  };
  return std::string(lo().open ? "(" : "[") + end_text(lo()) + ", " + end_text(hi()) + (hi().open ? ")" : "]");
}

namespace {

// Three-valued answer to "a lies entirely to the left of b".
enum class Tri { No, Yes, Unknown };

Tri left_of(const Interval& a, const Interval& b) {
  const Endpoint& ah = a.hi();
  const Endpoint& bl = b.lo();
  if (!ah.is_finite() || !bl.is_finite()) return Tri::No;
  const bool touching_ok = ah.open || bl.open;
  const Order o = compare(ah.value, bl.value);
  if (o == Order::Less) return Tri::Yes;
  if (o == Order::Equal) return touching_ok ? Tri::Yes : Tri::No;
  if (o == Order::Greater) return Tri::No;
  if (touching_ok && certainly_less_equal(ah.value, bl.value)) return Tri::Yes;
  return Tri::Unknown;
}

}  // namespace

Overlap overlap(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Overlap::Disjoint;
  const Tri ab = left_of(a, b);
  const Tri ba = left_of(b, a);
  if (ab == Tri::Yes || ba == Tri::Yes) return Overlap::Disjoint;
  if (ab == Tri::No && ba == Tri::No) return Overlap::Intersecting;
  return Overlap::Unknown;
}

bool certainly_subset(const Interval& a, const Interval& b) {
  if (a.is_empty()) return true;
  if (b.is_empty()) return false;
  const Endpoint& al = a.lo();
  const Endpoint& bl = b.lo();
  if (bl.is_finite()) {
    if (!al.is_finite()) return false;
    const bool strict = bl.open && !al.open;
    if (strict ? !certainly_less(bl.value, al.value) : !certainly_less_equal(bl.value, al.value)) return false;
  }
  const Endpoint& ah = a.hi();
  const Endpoint& bh = b.hi();
  if (bh.is_finite()) {
    if (!ah.is_finite()) return false;
    const bool strict = bh.open && !ah.open;
    if (strict ? !certainly_less(ah.value, bh.value) : !certainly_less_equal(ah.value, bh.value)) return false;
  }
  return true;
}

bool approximately_equal(const Interval& a, const Interval& b, const RealNum& tol) {
  if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
  auto same = [&tol](const Endpoint& x, const Endpoint& y) {
    if (x.kind != y.kind) return false;
    if (!x.is_finite()) return true;
    return x.open == y.open && certainly_within(x.value, y.value, tol);
  };
  return same(a.lo(), b.lo()) && same(a.hi(), b.hi());
}

Interval clip_midpoints(const Interval& a, const Interval& window) {
  if (a.is_empty() || window.is_empty()) return Interval();
  const mpq_class wl = window.lo().value.midpoint_rational();
  const mpq_class wh = window.hi().value.midpoint_rational();
  const mpq_class lo = a.lo().is_finite() ? std::max(wl, a.lo().value.midpoint_rational()) : wl;
  const mpq_class hi = a.hi().is_finite() ? std::min(wh, a.hi().value.midpoint_rational()) : wh;
  if (lo >= hi) return Interval();
  return Interval::closed(RealNum(lo), RealNum(hi));
}

}  // namespace lineact
