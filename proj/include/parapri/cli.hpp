#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace parapri {

/// Exit codes of the `parapri` command.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // semantic failure, e.g. a query not entailed under --assert
  kExitUsage = 2,    // usage, parse, or validation error
  kExitCap = 3,      // cap exceeded or internal invariant violation
};

/// Runs the command line `args` (args[0] is the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parapri
