#pragma once

#include <iosfwd>

namespace ellipcenters::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kNumericError = 2,
  kInternalError = 3,
};

/// Entry point for the `ellipcenters` tool. Subcommands: generate, solve,
/// bench, verify-geometry, gradcheck. Data goes to `out` (or files),
/// diagnostics to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ellipcenters::cli
