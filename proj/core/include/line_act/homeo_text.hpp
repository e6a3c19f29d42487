#pragma once

#include <string_view>

#include "line_act/homeo.hpp"

namespace lineact {

/// Parses the prefix text form produced by HomeoExpr::to_string():
///   identity | affine(a,b) | oddpower(p,fwd|root) | ladder(k,+1|-1)
///   | bconj(e) | compose(e1,e2,...) | inverse(e)
/// `unitpowerladder` is accepted as an alias of `ladder`. Positions in errors
/// are reported relative to `line` and `first_column`.
HomeoExpr parse_homeo(std::string_view text, int line = 1, int first_column = 1);

}  // namespace lineact
