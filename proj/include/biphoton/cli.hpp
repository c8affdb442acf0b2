#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace biphoton::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kNumericalError = 3,
  kIoError = 4,
};

/// Runs the command line `args` (without the program name) and returns the
/// process exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biphoton::cli
