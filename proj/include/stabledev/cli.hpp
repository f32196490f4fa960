#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stabledev::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kUsageError = 2,
    kNumericalFailure = 3,
};

// Runs one command line (args excludes the program name). Tabular results go
// to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stabledev::cli
