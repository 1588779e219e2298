#pragma once

#include <iosfwd>

namespace oddw::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,       // a proven "no"
  kUsage = 2,
  kExhausted = 3,      // node or candidate budget hit before a verdict
  kContradiction = 4,  // a survivor or witness disagrees with the established results
};

// Parses argv, runs one subcommand, writes JSON to `out` and diagnostics to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oddw::cli
