#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pfdkit::cli {

enum ExitCode { kOk = 0, kNegative = 1, kInputError = 2, kResourceAbort = 3 };

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pfdkit::cli
