#include "line_act/homeo.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "line_act/error.hpp"

namespace lineact {

struct HomeoExpr::Node {
  Kind kind = Kind::Identity;
  RealNum a;
  RealNum b;
  unsigned p = 0;
  bool root = false;
  long k = 0;
  int s = 1;
  std::vector<HomeoExpr> parts;  // Compose parts, or the single child
  std::shared_ptr<const CellMap> cell;
  std::optional<HomeoExpr> resolved;  // structural inverse held by Inverse nodes
};

namespace {

using Node = HomeoExpr::Node;

std::shared_ptr<const Node> identity_node() {
  static const auto node = std::make_shared<const Node>();
  return node;
}

// hull of f at the two endpoints of a tracked enclosure; valid because every
// node denotes an increasing map.
template <typename F>
RealNum monotone_split(const RealNum& x, F&& f) {
  const RealNum lo = RealNum::point(x.bounds().lo);
  const RealNum hi = RealNum::point(x.bounds().hi);
  return span(f(lo), f(hi));
}

long checked_cell(const mpz_class& n) {
  if (!n.fits_slong_p()) throw Error(ErrorCode::Domain, "point too far out for cellwise evaluation");
  return n.get_si();
}

RealNum ladder_exponent(long k, int s, long n) {
  const int sign = (n % 2 == 0) ? s : -s;
  const Precision prec = working_precision();
  if (k == 1) return RealNum(sign > 0 ? 2 : 1) / RealNum(sign > 0 ? 1 : 2);
  const double log2k = std::log2(static_cast<double>(k));
  if (n >= 0) {
    if (static_cast<double>(n) * log2k > static_cast<double>(prec) + 64.0) {
      // |2^c - 1| is far below one ulp of 1.
      BigFloat one(prec);
      mpfr_set_ui(one.get(), 1, MPFR_RNDN);
      BigFloat next = one;
      if (sign > 0) {
        mpfr_nextabove(next.get());
        return RealNum::from_bounds(one, next);
      }
      mpfr_nextbelow(next.get());
      return RealNum::from_bounds(next, one);
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(n));
    return exp2(RealNum(mpq_class(mpz_class(sign), den)));
  }
  const long m = -n;
  if (static_cast<double>(m) * log2k <= 62.0) {
    mpz_class c;
    mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(m));
    const long ci = sign * c.get_si();
    if (std::labs(ci) <= 64) return exp2(RealNum(ci));
    BigFloat e(prec);
    mpfr_set_si_2exp(e.get(), 1, ci, MPFR_RNDN);
    return RealNum::point(e);
  }
  // The exponent lies beyond the representable range; bracket it by the
  // extreme representable values.
  BigFloat lo(prec);
  BigFloat hi(prec);
  if (sign > 0) {
    mpfr_set_inf(lo.get(), 1);
    mpfr_nextbelow(lo.get());
    mpfr_set_inf(hi.get(), 1);
  } else {
    mpfr_set_zero(lo.get(), 1);
    mpfr_set_zero(hi.get(), 1);
    mpfr_nextabove(hi.get());
  }
  return RealNum::from_bounds(std::move(lo), std::move(hi));
}

RealNum psi(const RealNum& z) {
  const RealNum one(1);
  if (z.is_exact() ? sgn(z.rational()) >= 0 : z.bounds().lo.sign() >= 0) return one - one / (one + z);
  if (z.is_exact() ? sgn(z.rational()) <= 0 : z.bounds().hi.sign() <= 0) return one / (one - z) - one;
  return monotone_split(z, psi);
}

RealNum psi_inverse(const RealNum& y) {
  const RealNum one(1);
  if (y.is_exact() ? sgn(y.rational()) >= 0 : y.bounds().lo.sign() >= 0) return one / (one - y) - one;
  if (y.is_exact() ? sgn(y.rational()) <= 0 : y.bounds().hi.sign() <= 0) return one - one / (one + y);
  return monotone_split(y, psi_inverse);
}

}  // namespace

HomeoExpr::HomeoExpr() : node_(identity_node()) {}

HomeoExpr HomeoExpr::affine(RealNum a, RealNum b) {
  if (!a.certainly_positive()) throw Error(ErrorCode::BadParameter, "affine slope must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Affine;
  n->a = std::move(a);
  n->b = std::move(b);
  return HomeoExpr(std::move(n));
}

HomeoExpr HomeoExpr::odd_power(unsigned p, bool root) {
  if (p < 3 || p % 2 == 0) throw Error(ErrorCode::BadParameter, "odd power must be an odd integer >= 3");
  auto n = std::make_shared<Node>();
  n->kind = Kind::OddPower;
  n->p = p;
  n->root = root;
  return HomeoExpr(std::move(n));
}

HomeoExpr HomeoExpr::ladder(long k, int s) {
  if (k < 1) throw Error(ErrorCode::BadParameter, "ladder base k must be >= 1");
  if (s != 1 && s != -1) throw Error(ErrorCode::BadParameter, "ladder sign must be +1 or -1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Ladder;
  n->k = k;
  n->s = s;
  return HomeoExpr(std::move(n));
}

HomeoExpr HomeoExpr::bounded_conjugate(HomeoExpr inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::BoundedConjugate;
  n->parts.push_back(std::move(inner));
  return HomeoExpr(std::move(n));
}

HomeoExpr HomeoExpr::extension_cell(std::shared_ptr<const CellMap> map) {
  if (!map) throw Error(ErrorCode::BadParameter, "null cell map");
  auto n = std::make_shared<Node>();
  n->kind = Kind::ExtensionCell;
  n->cell = std::move(map);
  return HomeoExpr(std::move(n));
}

HomeoExpr HomeoExpr::compose(std::vector<HomeoExpr> parts) {
  if (parts.empty()) return HomeoExpr();
  if (parts.size() == 1) return std::move(parts.front());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compose;
  n->parts = std::move(parts);
  return HomeoExpr(std::move(n));
}

HomeoExpr HomeoExpr::inverse_node(HomeoExpr child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inverse;
  n->resolved = lineact::inverse(child);
  n->parts.push_back(std::move(child));
  return HomeoExpr(std::move(n));
}

HomeoExpr::Kind HomeoExpr::kind() const { return node_->kind; }
const RealNum& HomeoExpr::affine_a() const { return node_->a; }
const RealNum& HomeoExpr::affine_b() const { return node_->b; }
unsigned HomeoExpr::power() const { return node_->p; }
bool HomeoExpr::is_root() const { return node_->root; }
long HomeoExpr::ladder_k() const { return node_->k; }
int HomeoExpr::ladder_s() const { return node_->s; }
const HomeoExpr& HomeoExpr::child() const { return node_->parts.front(); }
const std::vector<HomeoExpr>& HomeoExpr::parts() const { return node_->parts; }
const CellMap& HomeoExpr::cell_map() const { return *node_->cell; }
std::shared_ptr<const CellMap> HomeoExpr::cell_map_ptr() const { return node_->cell; }

std::string HomeoExpr::to_string() const {
  switch (kind()) {
    case Kind::Identity: return "identity";
    case Kind::Affine: return "affine(" + affine_a().to_string() + "," + affine_b().to_string() + ")";
    case Kind::OddPower: return "oddpower(" + std::to_string(power()) + (is_root() ? ",root)" : ",fwd)");
    case Kind::Ladder: return "ladder(" + std::to_string(ladder_k()) + (ladder_s() > 0 ? ",+1)" : ",-1)");
    case Kind::BoundedConjugate: return "bconj(" + child().to_string() + ")";
    case Kind::ExtensionCell: return "extcell(" + cell_map().describe() + ")";
    case Kind::Inverse: return "inverse(" + child().to_string() + ")";
    case Kind::Compose: {
      std::string out = "compose(";
      for (std::size_t i = 0; i < parts().size(); ++i) {
        if (i) out += ",";
        out += parts()[i].to_string();
      }
      return out + ")";
    }
  }
  return "identity";
}

RealNum eval(const HomeoExpr& h, const RealNum& x) {
  const Node& n = *h.node_;
  switch (n.kind) {
    case HomeoExpr::Kind::Identity:
      return x;
    case HomeoExpr::Kind::Affine:
      return n.a * x + n.b;
    case HomeoExpr::Kind::OddPower:
      return n.root ? root(x, n.p) : pow_int(x, n.p);
    case HomeoExpr::Kind::Ladder: {
      const auto cell = common_floor(x);
      if (!cell) return monotone_split(x, [&h](const RealNum& v) { return eval(h, v); });
      const long c = checked_cell(*cell);
      const RealNum shift(c);
      return pow_real(x - shift, ladder_exponent(n.k, n.s, c)) + shift;
    }
    case HomeoExpr::Kind::BoundedConjugate: {
      const RealNum one(1);
      const RealNum minus_one(-1);
      if (certainly_less_equal(x, minus_one) || certainly_less_equal(one, x)) return x;
      if (certainly_less(minus_one, x) && certainly_less(x, one)) {
        return psi(eval(n.parts.front(), psi_inverse(x)));
      }
      return monotone_split(x, [&h](const RealNum& v) { return eval(h, v); });
    }
    case HomeoExpr::Kind::ExtensionCell: {
      const auto cell = common_floor(x);
      if (!cell) return monotone_split(x, [&h](const RealNum& v) { return eval(h, v); });
      const long c = checked_cell(*cell);
      const RealNum shift(c);
      return n.cell->apply(c, x - shift) + shift;
    }
    case HomeoExpr::Kind::Compose: {
      RealNum y = x;
      for (auto it = n.parts.rbegin(); it != n.parts.rend(); ++it) y = eval(*it, y);
      return y;
    }
    case HomeoExpr::Kind::Inverse:
      return eval(*n.resolved, x);
  }
  return x;
}

RealNum eval(const HomeoExpr& h, const RealNum& x, const RealNum& tol) {
  for (Precision p = working_precision();; p *= 2) {
    PrecisionScope scope(p);
    RealNum y = eval(h, x);
    if (certainly_less_equal(RealNum::point(y.error()), tol)) return y;
    if (p >= kPrecisionCeiling) {
      throw Error(ErrorCode::PrecisionExhausted,
                  "error bound " + RealNum::point(y.error()).to_string() + " exceeds tolerance at " +
                      std::to_string(p) + " bits");
    }
  }
}

Interval eval_interval(const HomeoExpr& h, const Interval& interval) {
  if (interval.is_empty()) throw Error(ErrorCode::BadParameter, "image of an empty interval");
  auto map_end = [&h](const Endpoint& e) {
    if (!e.is_finite()) return e;
    return Endpoint::finite(eval(h, e.value), e.open);
  };
  return Interval::make(map_end(interval.lo()), map_end(interval.hi()));
}

HomeoExpr inverse(const HomeoExpr& h) {
  const Node& n = *h.node_;
  switch (n.kind) {
    case HomeoExpr::Kind::Identity:
      return h;
    case HomeoExpr::Kind::Affine: {
      const RealNum inv_a = RealNum(1) / n.a;
      return HomeoExpr::affine(inv_a, -(n.b * inv_a));
    }
    case HomeoExpr::Kind::OddPower:
      return HomeoExpr::odd_power(n.p, !n.root);
    case HomeoExpr::Kind::Ladder:
      return HomeoExpr::ladder(n.k, -n.s);
    case HomeoExpr::Kind::BoundedConjugate:
      return HomeoExpr::bounded_conjugate(inverse(n.parts.front()));
    case HomeoExpr::Kind::ExtensionCell:
      return HomeoExpr::extension_cell(n.cell->inverse());
    case HomeoExpr::Kind::Compose: {
      std::vector<HomeoExpr> parts;
      parts.reserve(n.parts.size());
      for (auto it = n.parts.rbegin(); it != n.parts.rend(); ++it) parts.push_back(inverse(*it));
      return HomeoExpr::compose(std::move(parts));
    }
    case HomeoExpr::Kind::Inverse:
      return n.parts.front();
  }
  return h;
}

HomeoExpr compose(const HomeoExpr& h1, const HomeoExpr& h2) { return HomeoExpr::compose({h1, h2}); }

bool structurally_equal(const HomeoExpr& a, const HomeoExpr& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case HomeoExpr::Kind::Identity:
      return true;
    case HomeoExpr::Kind::Affine:
      return identical(a.affine_a(), b.affine_a()) && identical(a.affine_b(), b.affine_b());
    case HomeoExpr::Kind::OddPower:
      return a.power() == b.power() && a.is_root() == b.is_root();
    case HomeoExpr::Kind::Ladder:
      return a.ladder_k() == b.ladder_k() && a.ladder_s() == b.ladder_s();
    case HomeoExpr::Kind::ExtensionCell:
      return a.cell_map().equals(b.cell_map());
    case HomeoExpr::Kind::BoundedConjugate:
    case HomeoExpr::Kind::Inverse:
    case HomeoExpr::Kind::Compose:
      if (a.parts().size() != b.parts().size()) return false;
      for (std::size_t i = 0; i < a.parts().size(); ++i) {
        if (!structurally_equal(a.parts()[i], b.parts()[i])) return false;
      }
      return true;
  }
  return false;
}

namespace {

bool is_exact_identity_affine(const HomeoExpr& h) {
  return h.kind() == HomeoExpr::Kind::Affine && h.affine_a().is_exact() && h.affine_b().is_exact() &&
         h.affine_a().rational() == 1 && sgn(h.affine_b().rational()) == 0;
}

void flatten_into(const HomeoExpr& h, std::vector<HomeoExpr>& out) {
  if (h.kind() == HomeoExpr::Kind::Compose) {
    for (const auto& p : h.parts()) flatten_into(p, out);
    return;
  }
  HomeoExpr s = simplify(h);
  if (s.kind() == HomeoExpr::Kind::Compose) {
    for (const auto& p : s.parts()) out.push_back(p);
  } else if (s.kind() != HomeoExpr::Kind::Identity) {
    out.push_back(std::move(s));
  }
}

}  // namespace

HomeoExpr simplify(const HomeoExpr& h) {
  switch (h.kind()) {
    case HomeoExpr::Kind::Inverse:
      return simplify(inverse(h.child()));
    case HomeoExpr::Kind::Affine:
      return is_exact_identity_affine(h) ? HomeoExpr() : h;
    case HomeoExpr::Kind::BoundedConjugate: {
      HomeoExpr inner = simplify(h.child());
      if (inner.kind() == HomeoExpr::Kind::Identity) return inner;
      return HomeoExpr::bounded_conjugate(std::move(inner));
    }
    case HomeoExpr::Kind::Compose: {
      std::vector<HomeoExpr> flat;
      for (const auto& p : h.parts()) flatten_into(p, flat);
      std::vector<HomeoExpr> stack;
      for (auto& p : flat) {
        if (!stack.empty()) {
          const HomeoExpr& top = stack.back();
          if (top.kind() == HomeoExpr::Kind::Affine && p.kind() == HomeoExpr::Kind::Affine) {
            // top o p : x -> a1 (a2 x + b2) + b1
            HomeoExpr merged = HomeoExpr::affine(top.affine_a() * p.affine_a(),
                                                 top.affine_a() * p.affine_b() + top.affine_b());
            stack.pop_back();
            if (!is_exact_identity_affine(merged)) stack.push_back(std::move(merged));
            continue;
          }
          if (structurally_equal(top, inverse(p))) {
            stack.pop_back();
            continue;
          }
        }
        stack.push_back(std::move(p));
      }
      return HomeoExpr::compose(std::move(stack));
    }
    default:
      return h;
  }
}

std::vector<RealNum> sample_points(const Interval& interval, std::size_t n) {
  if (!interval.is_finite()) throw Error(ErrorCode::BadParameter, "sample points need a finite interval");
  std::vector<RealNum> out;
  out.reserve(n);
  const RealNum& lo = interval.lo().value;
  const RealNum width = interval.diameter();
  const RealNum count(static_cast<long>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const RealNum offset = RealNum(mpq_class(2 * static_cast<long>(j) + 1, 2));
    out.push_back(lo + offset * width / count);
  }
  return out;
}

namespace {

// Lower bound on |d|, or zero when d may vanish.
RealNum magnitude_lower(const RealNum& d) {
  if (d.is_exact()) return abs(d);
  if (d.bounds().lo.sign() > 0) return RealNum::point(d.bounds().lo);
  if (d.bounds().hi.sign() < 0) return -RealNum::point(d.bounds().hi);
  return RealNum();
}

}  // namespace

bool displacement_within(const HomeoExpr& h, const RealNum& x, const RealNum& tol) {
  for (Precision p = working_precision();; p *= 2) {
    PrecisionScope scope(p);
    const RealNum y = eval(h, x);
    if (certainly_less_equal(abs_diff_bound(y, x), tol)) return true;
    if (certainly_less(tol, magnitude_lower(y - x))) return false;
    if (p >= kPrecisionCeiling) {
      throw Error(ErrorCode::PrecisionExhausted,
                  "cannot decide |h(x) - x| <= tol at x = " + x.to_string() + " within " +
                      std::to_string(kPrecisionCeiling) + " bits");
    }
  }
}

bool is_identity_on(const HomeoExpr& h, const Interval& interval, std::size_t grid_n, const RealNum& tol) {
  if (interval.is_empty()) throw Error(ErrorCode::BadParameter, "identity test on an empty interval");
  const HomeoExpr s = simplify(h);
  if (s.kind() == HomeoExpr::Kind::Identity) return true;
  for (const auto& x : sample_points(interval, grid_n)) {
    if (!displacement_within(s, x, tol)) return false;
  }
  return true;
}

FixReport fixed_points(const HomeoExpr& h, const Interval& window, std::size_t grid_n, const RealNum& tol) {
  if (window.is_empty() || !window.is_finite() || !certainly_less(window.lo().value, window.hi().value)) {
    throw Error(ErrorCode::WindowDegenerate, "fixed-point window must be a finite nondegenerate interval");
  }
  if (grid_n < 2) throw Error(ErrorCode::BadParameter, "fixed-point grid needs at least 2 points");
  FixReport report;
  report.window = window;
  report.tolerance = tol;

  const RealNum& lo = window.lo().value;
  const RealNum step = window.diameter() / RealNum(static_cast<long>(grid_n - 1));
  std::vector<RealNum> xs;
  std::vector<int> state;  // 0 near-fixed, +1 / -1 sign of h(x) - x
  xs.reserve(grid_n);
  state.reserve(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    RealNum x = (i + 1 == grid_n) ? window.hi().value : lo + RealNum(static_cast<long>(i)) * step;
    if (displacement_within(h, x, tol)) {
      state.push_back(0);
    } else {
      const RealNum d = eval(h, x) - x;
      state.push_back(d.certainly_positive() ? 1 : (d.certainly_negative() ? -1 : (d.to_double() > 0 ? 1 : -1)));
    }
    xs.push_back(std::move(x));
  }

  // Fixed items in increasing order, as closed intervals (points are degenerate).
  std::vector<Interval> items;
  auto push_point = [&](const RealNum& x) {
    report.fixed_points.push_back(x);
    items.push_back(Interval::closed(x, x));
  };
  std::size_t i = 0;
  while (i < grid_n) {
    if (state[i] == 0) {
      std::size_t j = i;
      while (j + 1 < grid_n && state[j + 1] == 0) ++j;
      if (i == j) {
        push_point(xs[i]);
      } else {
        report.fixed_intervals.push_back(Interval::closed(xs[i], xs[j]));
        items.push_back(report.fixed_intervals.back());
      }
      i = j + 1;
      continue;
    }
    if (i + 1 < grid_n && state[i + 1] != 0 && state[i + 1] != state[i]) {
      RealNum a = xs[i];
      RealNum b = xs[i + 1];
      const int sign_a = state[i];
      std::optional<RealNum> root_found;
      for (int iter = 0; iter < 400; ++iter) {
        const RealNum m = RealNum(mpq_class((a.midpoint_rational() + b.midpoint_rational()) / 2));
        if (displacement_within(h, m, tol)) {
          root_found = m;
          break;
        }
        const RealNum d = eval(h, m) - m;
        const int sign_m = d.to_double() > 0 ? 1 : -1;
        (sign_m == sign_a ? a : b) = m;
      }
      if (root_found) {
        push_point(*root_found);
      } else {
        report.fixed_intervals.push_back(Interval::closed(a, b));
        items.push_back(report.fixed_intervals.back());
      }
    }
    ++i;
  }

  Endpoint cursor = Endpoint::finite(window.lo().value, true);
  for (const auto& item : items) {
    if (certainly_less(cursor.value, item.lo().value)) {
      report.complement_intervals.push_back(Interval::open(cursor.value, item.lo().value));
    }
    cursor = Endpoint::finite(item.hi().value, true);
  }
  if (certainly_less(cursor.value, window.hi().value)) {
    report.complement_intervals.push_back(Interval::open(cursor.value, window.hi().value));
  }
  return report;
}

}  // namespace lineact
