#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace levar {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,        // bad arguments or malformed input files
  kExitDomain = 2,       // numeric precondition violated
  kExitMismatch = 3,     // --expect did not reproduce
  kExitSolver = 4,       // internal consistency check failed
};

/// Runs the CLI on `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace levar
