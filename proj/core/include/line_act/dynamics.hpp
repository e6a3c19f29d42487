#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "line_act/action.hpp"

namespace lineact {

struct OrbitPoint {
  RealNum x;
  GroupElement witness;  // shortlex-first word reaching x
};

/// {realize(w)(x) : w in ball(L)}, sorted by value; points whose enclosures
/// overlap are merged, keeping the shortlex-first witness.
std::vector<OrbitPoint> orbit(const Action& act, const RealNum& x, unsigned radius, unsigned workers = 1);

/// Largest distance between consecutive members of (points in I) plus the
/// endpoints of I, computed on midpoints. I must be finite.
RealNum coverage_gap(const std::vector<RealNum>& points, const Interval& interval);
RealNum coverage_gap(const std::vector<OrbitPoint>& points, const Interval& interval);

struct TransitivityWitness {
  GroupElement word;
  Interval image;
  unsigned radius = 0;  // length of the witness word
};

/// Shortlex-first w in ball(L) with realize(w)(U) certainly meeting V.
std::optional<TransitivityWitness> transitivity_search(const Action& act, const Interval& u, const Interval& v,
                                                        unsigned radius, unsigned workers = 1);

enum class Verdict { Disjoint, PointwiseFixed, Violation };
std::string to_string(Verdict v);

struct WordVerdict {
  GroupElement word;
  Verdict verdict = Verdict::Violation;
  bool undecided = false;  // overlap could not be decided at the precision ceiling
};

struct CertificateOptions {
  std::size_t grid_n = 64;
  RealNum tol = RealNum::rational(1, 1000000000);
  /// Sweep every freely reduced word (default) or one word per group element.
  bool dedup_elements = false;
  unsigned workers = 1;
};

struct WanderingCertificate {
  Interval interval;
  unsigned radius = 0;
  std::size_t grid_n = 0;
  RealNum tol;
  bool dedup_elements = false;
  std::vector<WordVerdict> verdicts;
  bool certified = false;
  std::optional<GroupElement> witness;  // first Violation when refuted
};

/// Verdict for every nonempty word of the ball: Disjoint when the image of J
/// certainly misses J, PointwiseFixed when the word is the identity on J,
/// Violation otherwise.
WanderingCertificate wandering_certificate(const Action& act, const Interval& j, unsigned radius,
                                           const CertificateOptions& options = {});

struct WanderingParams {
  std::size_t grid_n = 801;
  RealNum fix_tol = RealNum::rational(1, 1000000000000);
  /// Tolerance for the sampled Fix-invariance and slack in the disjointness claims.
  RealNum claim_tol = RealNum::rational(1, 1000000);
  std::size_t claim_samples = 16;
  /// When positive, the result is also certified at this radius.
  unsigned verify_radius = 0;
};

struct WanderingStep {
  std::string label;       // generator the step refers to
  Interval component;      // maximal Fix-complement interval used
  std::string claim;       // what was verified
};

struct WanderingResult {
  Interval j;
  std::vector<WanderingStep> steps;
  bool trivial_action = false;  // every generator is the identity on the window
  std::optional<WanderingCertificate> certificate;
};

/// Nested Fix-complement construction of a wandering interval for BS(1,-1)
/// and ladder groups with name (-1, ..., -1), k <= 3. Throws not-applicable
/// outside that family and construction-failed when a claim fails.
WanderingResult find_wandering_interval(const Action& act, const Interval& window, const WanderingParams& params = {});

struct DichotomyOptions {
  std::uint64_t seed = 1;
  std::size_t pairs = 10;
  unsigned max_radius = 20;
  unsigned certify_radius = 8;
  unsigned workers = 1;
  /// Intervals tried for certification after the constructed one.
  std::vector<Interval> candidates = {Interval::open(RealNum::rational(1, 5), RealNum::rational(3, 10)),
                                      Interval::open(RealNum(0), RealNum::rational(1, 2))};
};

struct PairOutcome {
  Interval u;
  Interval v;
  std::optional<TransitivityWitness> witness;
};

struct DichotomyResult {
  enum class Outcome { TransitiveAtDepth, WanderingAtDepth, Unresolved };
  Outcome outcome = Outcome::Unresolved;
  std::vector<PairOutcome> pairs;
  std::optional<WanderingCertificate> certificate;
};

std::string to_string(DichotomyResult::Outcome o);

/// Random (U, V) pairs in [-3, 3] searched for transitivity; if any pair
/// fails, candidate intervals are offered to the wandering certificate.
DichotomyResult resolve_dichotomy(const Action& act, const DichotomyOptions& options = {});

}  // namespace lineact
