#include "line_act/gallery.hpp"

#include "line_act/error.hpp"

namespace lineact {

const std::vector<GalleryEntry>& gallery_entries() {
  static const std::vector<GalleryEntry> entries = {
      {"ex_1_1", "Z acting by the unit translation x+1", ""},
      {"ex_1_2", "Z^2 acting by translations x+1 and x+alpha", "alpha (default sqrt2)"},
      {"ex_1_3", "BS(1,n) acting by T(x)=x+1 and S(x)=nx", "n >= 2 (default 2)"},
      {"ex_1_4", "BS(1,-k) acting by g=ladder(k,+1) and f(x)=x+1", "k >= 2 (default 2)"},
      {"klein_bottle", "BS(1,-1) acting by g=ladder(1,+1) and f(x)=x+1", ""},
      {"free_transitive", "Z*Z acting by f(x)=x+1 and g(x)=x^3", ""},
  };
  return entries;
}

namespace {

long require_at_least(const std::optional<long>& v, long fallback, long minimum, const char* what) {
  const long value = v.value_or(fallback);
  if (value < minimum) {
    throw Error(ErrorCode::BadParameter, std::string(what) + " must be >= " + std::to_string(minimum) +
                                             " (got " + std::to_string(value) + ")");
  }
  return value;
}

Action ladder_action(long k, const std::string& name) {
  const Presentation p = Presentation::baumslag_solitar(-k).with_labels({"a", "b"}, {"g", "f"});
  return Action(p, {HomeoExpr::ladder(k, 1), HomeoExpr::translation(RealNum(1))}, name);
}

}  // namespace

Action gallery(std::string_view name, const GalleryParams& params) {
  if (name == "ex_1_1") {
    return Action(Presentation::free_abelian(1), {HomeoExpr::translation(RealNum(1))}, "ex_1_1");
  }
  if (name == "ex_1_2") {
    RealNum alpha = params.alpha.value_or(*RealNum::named_constant("sqrt2", working_precision()));
    const std::string label = "ex_1_2(alpha=" + alpha.to_string() + ")";
    return Action(Presentation::free_abelian(2),
                  {HomeoExpr::translation(RealNum(1)), HomeoExpr::translation(std::move(alpha))}, label);
  }
  if (name == "ex_1_3") {
    const long n = require_at_least(params.n, 2, 2, "n");
    const Presentation p = Presentation::baumslag_solitar(n).with_labels({"a", "b"}, {"T", "S"});
    return Action(p, {HomeoExpr::translation(RealNum(1)), HomeoExpr::affine(RealNum(n), RealNum(0))},
                  "ex_1_3(n=" + std::to_string(n) + ")");
  }
  if (name == "ex_1_4") {
    const long k = require_at_least(params.k, 2, 2, "k");
    return ladder_action(k, "ex_1_4(k=" + std::to_string(k) + ")");
  }
  if (name == "klein_bottle") return ladder_action(1, "klein_bottle");
  if (name == "free_transitive") {
    const Presentation p = Presentation::free(2).with_labels({"a", "b"}, {"f", "g"});
    return Action(p, {HomeoExpr::translation(RealNum(1)), HomeoExpr::odd_power(3, false)}, "free_transitive");
  }
  throw Error(ErrorCode::UnknownGalleryName, "no gallery action named '" + std::string(name) + "'");
}

Action gallery_from_id(std::string_view id) {
  std::string_view rest = id;
  if (rest.substr(0, 8) == "gallery:") rest.remove_prefix(8);
  const auto colon = rest.find(':');
  const std::string name(rest.substr(0, colon));
  GalleryParams params;
  if (colon != std::string_view::npos) {
    std::string_view list = rest.substr(colon + 1);
    while (!list.empty()) {
      const auto comma = list.find(',');
      const std::string_view item = list.substr(0, comma);
      const auto eq = item.find('=');
      std::string key = eq == std::string_view::npos ? "" : std::string(item.substr(0, eq));
      const std::string value(eq == std::string_view::npos ? item : item.substr(eq + 1));
      if (key.empty()) key = name == "ex_1_2" ? "alpha" : (name == "ex_1_3" ? "n" : "k");
      auto as_long = [&]() {
        try {
          std::size_t used = 0;
          const long v = std::stol(value, &used);
          if (used == value.size()) return v;
        } catch (const std::exception&) {
        }
        throw Error(ErrorCode::BadParameter, "parameter " + key + " expects an integer, got '" + value + "'");
      };
      if (key == "alpha") {
        params.alpha = RealNum::parse(value);
      } else if (key == "n") {
        params.n = as_long();
      } else if (key == "k") {
        params.k = as_long();
      } else {
        throw Error(ErrorCode::BadParameter, "unknown gallery parameter '" + key + "'");
      }
      if (comma == std::string_view::npos) break;
      list.remove_prefix(comma + 1);
    }
  }
  return gallery(name, params);
}

}  // namespace lineact
