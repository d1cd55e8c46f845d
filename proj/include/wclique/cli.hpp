#pragma once

#include <iosfwd>

namespace wclique {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInput = 3,
  kExitNumerical = 4,
  kExitSelftest = 5,
  kExitIo = 6,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Oracle-backed invariant suite behind `selftest`; true when every check passes.
bool run_selftest(std::ostream& out);

}  // namespace wclique
