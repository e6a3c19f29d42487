#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "line_act/action.hpp"

namespace lineact {

struct GalleryParams {
  std::optional<RealNum> alpha;  // ex_1_2, default sqrt2
  std::optional<long> n;         // ex_1_3, default 2
  std::optional<long> k;         // ex_1_4, default 2
};

struct GalleryEntry {
  std::string name;
  std::string description;
  std::string params;
};

const std::vector<GalleryEntry>& gallery_entries();

/// Builds a named action: ex_1_1, ex_1_2, ex_1_3, ex_1_4, klein_bottle, free_transitive.
Action gallery(std::string_view name, const GalleryParams& params = {});

/// Parses `gallery:<name>[:<params>]` where params are `key=value` pairs
/// separated by commas, or a single bare value for the entry's parameter.
Action gallery_from_id(std::string_view id);

}  // namespace lineact
