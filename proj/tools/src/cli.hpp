#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lobresp::cli {

/// Runs one invocation. `args` excludes the program name. Returns the exit
/// code: 0 on success, 1 on data errors, 2 on usage errors. Errors are
/// reported as a single `error: code=... message=...` line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lobresp::cli
