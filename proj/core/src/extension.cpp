#include "line_act/extension.hpp"

#include "line_act/error.hpp"
#include "line_act/gallery.hpp"

namespace lineact {

namespace {

GroupElement substitute(const Presentation& p, const std::vector<GroupElement>& images, const GroupElement& w) {
  std::vector<Letter> out;
  for (const Letter& l : w.letters()) {
    const GroupElement& img = images.at(l.gen);
    std::vector<Letter> part = img.letters();
    if (l.inv) {
      std::vector<Letter> inv(part.rbegin(), part.rend());
      for (auto& x : inv) x = x.inverse();
      part = std::move(inv);
    }
    out.insert(out.end(), part.begin(), part.end());
  }
  return reduce(p, out);
}

struct ExtensionState {
  ExtensionSpec spec;
  // maps[j + horizon][letter code]: the inner image of a^-j h a^j.
  std::vector<std::vector<HomeoExpr>> maps;
};

class ExtensionCellMap final : public CellMap {
 public:
  ExtensionCellMap(std::shared_ptr<const ExtensionState> state, std::vector<Letter> word)
      : state_(std::move(state)), word_(std::move(word)) {}

  RealNum apply(std::int64_t cell, const RealNum& local) const override {
    const long h = state_->spec.horizon;
    if (cell < -h || cell > h) {
      throw Error(ErrorCode::HorizonExceeded, "cell " + std::to_string(cell) + " lies beyond the horizon |j| <= " +
                                                  std::to_string(h));
    }
    const auto& row = state_->maps[static_cast<std::size_t>(cell + h)];
    RealNum y = local;
    for (auto it = word_.rbegin(); it != word_.rend(); ++it) y = eval(row[it->code()], y);
    return y;
  }

  std::shared_ptr<const CellMap> inverse() const override {
    std::vector<Letter> inv(word_.rbegin(), word_.rend());
    for (auto& l : inv) l = l.inverse();
    return std::make_shared<ExtensionCellMap>(state_, std::move(inv));
  }

  std::string describe() const override {
    const Presentation& p = state_->spec.inner.presentation();
    return state_->spec.name + ":" + word_to_string(p, reduce(p, word_));
  }

  bool equals(const CellMap& other) const override {
    const auto* o = dynamic_cast<const ExtensionCellMap*>(&other);
    return o != nullptr && o->state_ == state_ && o->word_ == word_;
  }

 private:
  std::shared_ptr<const ExtensionState> state_;
  std::vector<Letter> word_;
};

}  // namespace

GroupElement ExtensionSpec::conjugation_rule(long j, const GroupElement& b) const {
  const Presentation& p = inner.presentation();
  GroupElement w = reduce(p, b.letters());
  const auto& images = j >= 0 ? theta : theta_inv;
  for (long step = 0; step < std::labs(j); ++step) w = substitute(p, images, w);
  return w;
}

Action extend_action(const ExtensionSpec& spec) {
  const Presentation& hp = spec.inner.presentation();
  if (spec.theta.size() != hp.rank() || spec.theta_inv.size() != hp.rank()) {
    throw Error(ErrorCode::BadParameter, "conjugation rule needs one image per H-generator");
  }
  if (spec.outer.rank() != hp.rank() + 1) {
    throw Error(ErrorCode::BadParameter, "outer presentation must have one generator more than H");
  }
  if (spec.horizon < 0) throw Error(ErrorCode::BadParameter, "horizon must be nonnegative");

  auto state = std::make_shared<ExtensionState>(ExtensionState{spec, {}});
  const long h = spec.horizon;
  state->maps.resize(static_cast<std::size_t>(2 * h + 1));
  for (int dir : {1, -1}) {
    std::vector<GroupElement> current;
    for (unsigned g = 0; g < hp.rank(); ++g) current.push_back(letter_element(hp, {g, false}));
    const auto& images = dir > 0 ? spec.theta : spec.theta_inv;
    for (long j = 0; j <= h; ++j) {
      if (j > 0) {
        for (auto& w : current) w = substitute(hp, images, w);
      }
      auto& row = state->maps[static_cast<std::size_t>(dir * j + h)];
      if (!row.empty()) continue;
      for (unsigned code = 0; code < 2 * hp.rank(); ++code) {
        const Letter l = Letter::from_code(code);
        const GroupElement w = l.inv ? inverse(hp, current[l.gen]) : current[l.gen];
        row.push_back(realize(spec.inner, w));
      }
    }
  }

  std::vector<HomeoExpr> images;
  images.push_back(HomeoExpr::translation(RealNum(1)));
  for (unsigned g = 0; g < hp.rank(); ++g) {
    images.push_back(HomeoExpr::extension_cell(
        std::make_shared<ExtensionCellMap>(state, std::vector<Letter>{Letter{g, false}})));
  }
  return Action(spec.outer, std::move(images), spec.name.empty() ? "extension" : spec.name);
}

Action conjugate_into_unit_interval(const Action& act) {
  std::vector<HomeoExpr> images;
  for (const auto& h : act.images()) {
    images.push_back(HomeoExpr::compose({HomeoExpr::affine(RealNum::rational(1, 2), RealNum::rational(1, 2)),
                                         HomeoExpr::bounded_conjugate(h),
                                         HomeoExpr::affine(RealNum(2), RealNum(-1))}));
  }
  return Action(act.presentation(), std::move(images), act.name() + " in (0,1)");
}

ExtensionSpec direct_product_spec(const RealNum& alpha) {
  GalleryParams params;
  params.alpha = alpha;
  const Action base = gallery("ex_1_2", params);
  const Action inner = conjugate_into_unit_interval(base);
  const Presentation& hp = inner.presentation();
  std::vector<GroupElement> trivial;
  for (unsigned g = 0; g < hp.rank(); ++g) trivial.push_back(letter_element(hp, {g, false}));
  return ExtensionSpec{inner, trivial, trivial, Presentation::free_abelian(3), kDefaultHorizon, "direct_product"};
}

ExtensionSpec klein_ladder_spec() {
  const Presentation hp = Presentation::ladder({-1}).with_labels({"h0", "h1"});
  const Action base(hp, {HomeoExpr::translation(RealNum(1)), HomeoExpr::ladder(1, 1)}, "klein");
  const Action inner = conjugate_into_unit_interval(base);
  const std::vector<GroupElement> theta = {letter_element(hp, {0, true}), letter_element(hp, {1, false})};
  return ExtensionSpec{inner, theta, theta, Presentation::ladder({-1, -1}), kDefaultHorizon, "klein_ladder"};
}

}  // namespace lineact
