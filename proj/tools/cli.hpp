#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lineact::cli {

/// Runs one `line-act` invocation. `args` excludes the program name.
/// Returns 0 on success, 1 for a negative result (refuted certificate, no
/// witness, failed check) and 2 on errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lineact::cli
