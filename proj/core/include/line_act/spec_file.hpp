#pragma once

#include <string>
#include <string_view>

#include "line_act/action.hpp"

namespace lineact {

/// Parses an action file:
///
///   # comment
///   group bs 1 -2          (also: free <r>, abelian <r>, ladder <n0> <n1> ...)
///   gen a = ladder(2,+1)
///   gen b = affine(1,1)
///
/// Generator names become the presentation's labels in order of appearance.
/// Errors carry the line and column of the offending token.
Action parse_action_spec(std::string_view text, const std::string& name = "spec");

/// Reads and parses an action file from disk.
Action load_action_spec(const std::string& path);

/// Resolves an action source: `gallery:<name>:<params>` or a file path.
Action load_action(const std::string& source);

}  // namespace lineact
