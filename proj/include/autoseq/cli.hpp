#pragma once

#include <iosfwd>

namespace autoseq {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitBudget = 1,
  kExitInvalid = 2,
  kExitInsufficient = 3,
  kExitCap = 4,
};

/// Runs one command. All regular output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace autoseq
