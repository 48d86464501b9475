#pragma once

#include <iosfwd>

namespace melonet {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitCorpusEmpty = 3,
  kExitInternal = 4,
};

/// Runs `melonet <subcommand> ...`. Written file paths go to `out`, one per
/// line; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace melonet
