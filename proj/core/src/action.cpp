#include "line_act/action.hpp"

#include <random>

#include "line_act/error.hpp"
#include "line_act/parallel.hpp"

namespace lineact {

Action::Action(Presentation presentation, std::vector<HomeoExpr> images, std::string name)
    : presentation_(std::move(presentation)), images_(std::move(images)), name_(std::move(name)) {
  if (images_.size() != presentation_.rank()) {
    throw Error(ErrorCode::BadParameter, "action needs one image per generator (" +
                                             std::to_string(presentation_.rank()) + " expected, " +
                                             std::to_string(images_.size()) + " given)");
  }
  inverse_images_.reserve(images_.size());
  for (const auto& h : images_) inverse_images_.push_back(simplify(inverse(h)));
}

Action Action::with_verification(Verification v) const {
  Action copy = *this;
  copy.verification_ = std::move(v);
  return copy;
}

HomeoExpr realize(const Action& act, const std::vector<Letter>& letters) {
  std::vector<HomeoExpr> parts;
  parts.reserve(letters.size());
  for (const Letter& l : letters) {
    if (l.gen >= act.presentation().rank()) {
      throw Error(ErrorCode::UnknownGenerator, "generator index " + std::to_string(l.gen) + " out of range");
    }
    parts.push_back(act.letter_image(l));
  }
  return simplify(HomeoExpr::compose(std::move(parts)));
}

HomeoExpr realize(const Action& act, const GroupElement& w) { return realize(act, w.letters()); }

std::string SampleSpec::describe() const {
  return std::to_string(count) + " uniform points in " + range.to_string();
}

RelationReport check_relations(const Action& act, const SampleSpec& samples, const RealNum& tol, unsigned workers) {
  const Presentation& p = act.presentation();
  const std::vector<Relation> rels = relations(p);
  const std::vector<RealNum> xs = sample_points(samples.range, samples.count);

  RelationReport report;
  report.tolerance = tol;
  report.samples = samples.describe();
  report.passed = true;
  for (const auto& rel : rels) {
    const HomeoExpr lhs = realize(act, rel.lhs);
    const HomeoExpr rhs = realize(act, rel.rhs);
    std::vector<RealNum> residual(xs.size());
    parallel_for(xs.size(), workers, [&](std::size_t i) {
      residual[i] = abs_diff_bound(eval(lhs, xs[i]), eval(rhs, xs[i]));
    });
    RelationResidual r;
    r.relation = word_to_string(p, rel.lhs) + " = " + word_to_string(p, rel.rhs);
    std::size_t worst = 0;
    for (std::size_t i = 1; i < residual.size(); ++i) {
      if (compare(residual[worst], residual[i]) == Order::Less ||
          (compare(residual[worst], residual[i]) == Order::Unknown &&
           residual[i].to_double() > residual[worst].to_double())) {
        worst = i;
      }
    }
    if (!residual.empty()) {
      r.worst = residual[worst];
      r.worst_at = xs[worst];
    }
    r.passed = certainly_less_equal(r.worst, tol);
    report.passed = report.passed && r.passed;
    report.relations.push_back(std::move(r));
  }
  return report;
}

HomomorphismReport homomorphism_sweep(const Action& act, const HomomorphismSweep& sweep, unsigned workers) {
  const Presentation& p = act.presentation();
  std::mt19937_64 rng(sweep.seed);
  auto draw = [&] {
    const auto len = static_cast<unsigned>(rng() % (sweep.max_length + 1));
    std::vector<Letter> w;
    for (unsigned i = 0; i < len; ++i) w.push_back(Letter::from_code(static_cast<unsigned>(rng() % (2 * p.rank()))));
    return reduce(p, w);
  };
  std::vector<std::pair<GroupElement, GroupElement>> words;
  for (std::size_t i = 0; i < sweep.pairs; ++i) {
    GroupElement u = draw();
    GroupElement v = draw();
    words.emplace_back(std::move(u), std::move(v));
  }
  const std::vector<RealNum> xs = sample_points(sweep.range, sweep.points);

  struct PairResult {
    RealNum worst = RealNum(0);
    std::size_t at = 0;
    std::size_t undecided = 0;
    std::size_t refuted = 0;
  };
  std::vector<PairResult> per_pair(words.size());
  parallel_for(words.size(), workers, [&](std::size_t i) {
    const auto& [u, v] = words[i];
    const HomeoExpr uv = realize(act, multiply(p, u, v));
    const HomeoExpr composite = HomeoExpr::compose({realize(act, u), realize(act, v)});
    PairResult& out = per_pair[i];
    for (std::size_t s = 0; s < xs.size(); ++s) {
      RealNum lhs = eval(uv, xs[s]);
      RealNum rhs = eval(composite, xs[s]);
      if (!certainly_within(lhs, rhs, sweep.tol)) {
        try {
          const RealNum half_tol = sweep.tol / RealNum(2);
          lhs = eval(uv, xs[s], half_tol);
          rhs = eval(composite, xs[s], half_tol);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::PrecisionExhausted) throw;
        }
      }
      if (!certainly_within(lhs, rhs, sweep.tol)) {
        if (compare(lhs, rhs) == Order::Unknown) {
          ++out.undecided;
          continue;
        }
        ++out.refuted;
      }
      const RealNum r = abs_diff_bound(lhs, rhs);
      if (r.to_double() > out.worst.to_double()) {
        out.worst = r;
        out.at = s;
      }
    }
  });

  HomomorphismReport report;
  report.pairs = words.size();
  report.worst = RealNum(0);
  bool first = true;
  for (std::size_t i = 0; i < per_pair.size(); ++i) {
    const PairResult& r = per_pair[i];
    report.undecided += r.undecided;
    report.refuted += r.refuted;
    if (first || r.worst.to_double() > report.worst.to_double()) {
      first = false;
      report.worst = r.worst;
      report.worst_u = words[i].first;
      report.worst_v = words[i].second;
      if (!xs.empty()) report.worst_at = xs[r.at];
    }
  }
  report.passed = report.undecided == 0 && report.refuted == 0 && certainly_less_equal(report.worst, sweep.tol);
  return report;
}

}  // namespace lineact
