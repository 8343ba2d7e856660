#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace validus::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailed = 1,
  kInputError = 2,
  kInfeasible = 3,
};

/// Runs the command line `args` (program name first) and returns the exit
/// code. Reports go to `out` unless `-o` names a file; messages go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace validus::cli
