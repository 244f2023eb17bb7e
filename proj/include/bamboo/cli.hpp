#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bamboo::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputError = 2 };

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// `out` as JSON; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace bamboo::cli
