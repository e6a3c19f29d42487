#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "line_act/interval.hpp"
#include "line_act/real.hpp"

namespace lineact {

class HomeoExpr;

/// A map that acts on each integer cell [j, j+1] by its own homeomorphism of
/// [0, 1] fixing the endpoints. Implemented by the extension operator.
class CellMap {
 public:
  virtual ~CellMap() = default;
  /// Image of the local coordinate t in [0, 1] for cell j.
  virtual RealNum apply(std::int64_t cell, const RealNum& local) const = 0;
  virtual std::shared_ptr<const CellMap> inverse() const = 0;
  virtual std::string describe() const = 0;
  virtual bool equals(const CellMap& other) const = 0;
};

/// Immutable expression tree denoting an increasing homeomorphism of the line.
class HomeoExpr {
 public:
  enum class Kind { Identity, Affine, OddPower, Ladder, BoundedConjugate, ExtensionCell, Compose, Inverse };

  HomeoExpr();  // identity

  static HomeoExpr identity() { return HomeoExpr(); }
  /// x -> a x + b with a > 0.
  static HomeoExpr affine(RealNum a, RealNum b);
  static HomeoExpr translation(RealNum b) { return affine(RealNum(1), std::move(b)); }
  /// x -> x^p (root = false) or the signed real p-th root (root = true); p odd >= 3.
  static HomeoExpr odd_power(unsigned p, bool root);
  /// On [n, n+1): x -> (x - n)^(2^(s (-1)^n k^-n)) + n.
  static HomeoExpr ladder(long k, int s);
  /// psi o inner o psi^-1 on (-1, 1), identity elsewhere; psi(x) = x / (1 + |x|).
  static HomeoExpr bounded_conjugate(HomeoExpr inner);
  static HomeoExpr extension_cell(std::shared_ptr<const CellMap> map);
  /// parts[0] o parts[1] o ... (the last part acts first).
  static HomeoExpr compose(std::vector<HomeoExpr> parts);
  static HomeoExpr inverse_node(HomeoExpr child);

  Kind kind() const;
  const RealNum& affine_a() const;
  const RealNum& affine_b() const;
  unsigned power() const;
  bool is_root() const;
  long ladder_k() const;
  int ladder_s() const;
  /// The single child of BoundedConjugate or Inverse.
  const HomeoExpr& child() const;
  const std::vector<HomeoExpr>& parts() const;
  const CellMap& cell_map() const;
  std::shared_ptr<const CellMap> cell_map_ptr() const;

  /// Canonical prefix text, e.g. `compose(affine(1,1),oddpower(3,fwd))`.
  std::string to_string() const;

  struct Node;

 private:
  explicit HomeoExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend RealNum eval(const HomeoExpr& h, const RealNum& x);
  friend HomeoExpr inverse(const HomeoExpr& h);
};

/// h(x). Exact for rational-closed paths, otherwise a rigorous enclosure at
/// the working precision.
RealNum eval(const HomeoExpr& h, const RealNum& x);

/// h(x) with error bound at most tol; doubles the precision until the bound
/// is met or the ceiling is reached (then throws precision-exhausted).
RealNum eval(const HomeoExpr& h, const RealNum& x, const RealNum& tol);

/// Image of an interval; infinite ends stay infinite and openness is kept.
Interval eval_interval(const HomeoExpr& h, const Interval& interval);

/// Structural inverse.
HomeoExpr inverse(const HomeoExpr& h);
/// h1 o h2.
HomeoExpr compose(const HomeoExpr& h1, const HomeoExpr& h2);
HomeoExpr simplify(const HomeoExpr& h);

/// Recursive structural equality with identical coefficients.
bool structurally_equal(const HomeoExpr& a, const HomeoExpr& b);

struct FixReport {
  Interval window;
  std::vector<RealNum> fixed_points;
  std::vector<Interval> fixed_intervals;
  std::vector<Interval> complement_intervals;
  RealNum tolerance;
};

/// Grid-and-bisection search for the fixed set of h inside a finite window.
FixReport fixed_points(const HomeoExpr& h, const Interval& window, std::size_t grid_n, const RealNum& tol);

/// Uniform sample points of a finite interval: midpoints of n equal cells.
std::vector<RealNum> sample_points(const Interval& interval, std::size_t n);

/// Decides |h(x) - x| <= tol, raising the precision when undecided.
/// Throws precision-exhausted when the ceiling is reached.
bool displacement_within(const HomeoExpr& h, const RealNum& x, const RealNum& tol);

/// |h(x) - x| <= tol on grid_n sample points; Identity after simplification
/// short-circuits to true.
bool is_identity_on(const HomeoExpr& h, const Interval& interval, std::size_t grid_n, const RealNum& tol);

}  // namespace lineact
