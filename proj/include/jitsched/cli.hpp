#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jitsched {

/// Exit codes shared by every subcommand.
enum ExitStatus : int {
  kExitYes = 0,     // feasible, target met, suite consistent
  kExitNo = 1,      // infeasible, below target, counterexample found
  kExitUsage = 2,   // bad flags, unreadable or invalid input
  kExitBudget = 3,  // search or enumeration budget exhausted
};

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jitsched
