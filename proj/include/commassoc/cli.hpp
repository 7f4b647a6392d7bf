#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace commassoc {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerdictFails = 1,
  kExitUsage = 2,
  kExitBudget = 3,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --output names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace commassoc
