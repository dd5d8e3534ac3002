#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tlc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kVerificationFailed = 3,
  kNumericalFailure = 4,
};

/// Runs one `tlc` command. `args` excludes the program name. Results go to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tlc::cli
