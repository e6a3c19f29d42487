#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "line_act/homeo.hpp"
#include "line_act/words.hpp"

namespace lineact {

struct Verification {
  bool checked = false;
  bool passed = false;
  RealNum tolerance;
  std::string samples;
};

/// Binding of a presentation's generators to homeomorphisms.
class Action {
 public:
  Action(Presentation presentation, std::vector<HomeoExpr> images, std::string name = "");

  const Presentation& presentation() const { return presentation_; }
  const std::vector<HomeoExpr>& images() const { return images_; }
  const HomeoExpr& image(unsigned gen) const { return images_.at(gen); }
  /// Image of a letter (inverse letters use the precomputed inverse image).
  const HomeoExpr& letter_image(Letter l) const { return l.inv ? inverse_images_.at(l.gen) : images_.at(l.gen); }
  const std::string& name() const { return name_; }

  const Verification& verification() const { return verification_; }
  Action with_verification(Verification v) const;

 private:
  Presentation presentation_;
  std::vector<HomeoExpr> images_;
  std::vector<HomeoExpr> inverse_images_;
  std::string name_;
  Verification verification_;
};

/// Composite of generator images along the word; the leftmost letter acts last.
HomeoExpr realize(const Action& act, const GroupElement& w);
HomeoExpr realize(const Action& act, const std::vector<Letter>& letters);

/// Sample specification for relation checks: `count` cell midpoints of `range`.
struct SampleSpec {
  Interval range;
  std::size_t count = 100;
  std::string describe() const;
};

struct RelationResidual {
  std::string relation;
  RealNum worst;      // upper bound on the largest residual
  RealNum worst_at;   // sample point where it occurred
  bool passed = false;
};

struct RelationReport {
  std::vector<RelationResidual> relations;
  RealNum tolerance;
  std::string samples;
  bool passed = false;
};

/// Residual sup over the sample points of |realize(u)(x) - realize(v)(x)| for
/// each defining relation u = v. Work is split across `workers` threads.
RelationReport check_relations(const Action& act, const SampleSpec& samples, const RealNum& tol,
                               unsigned workers = 1);

struct HomomorphismSweep {
  std::size_t pairs = 100;
  unsigned max_length = 6;
  /// Points per pair: uniform cell midpoints of `range`.
  std::size_t points = 20;
  Interval range = Interval::closed(RealNum(-3), RealNum(3));
  RealNum tol = RealNum(mpq_class("1/100000000000000000000"));
  std::uint64_t seed = 1;
};

struct HomomorphismReport {
  std::size_t pairs = 0;
  RealNum worst;          // upper bound on the largest decided residual
  GroupElement worst_u;
  GroupElement worst_v;
  RealNum worst_at;
  /// Samples whose residual stayed above tol up to the precision ceiling
  /// while the two enclosures still overlap.
  std::size_t undecided = 0;
  /// Samples where the two sides are certainly different.
  std::size_t refuted = 0;
  bool passed = false;    // every sample decided within tol
};

/// Compares realize(u v)(x) with realize(u)(realize(v)(x)) for random pairs of
/// freely reduced words of length at most max_length. The product is taken
/// through multiply, so presentations with a normal form exercise their
/// relations. Words are drawn from mt19937_64(seed). Residuals above tol are
/// re-evaluated with rising precision before they count against the sweep.
HomomorphismReport homomorphism_sweep(const Action& act, const HomomorphismSweep& sweep, unsigned workers = 1);

}  // namespace lineact
