#pragma once

#include <iosfwd>

namespace igbounds::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kViolations = 1,
  kInvalidInput = 2,
  kOracleFailure = 3,
};

/// Runs the tool with the given arguments, writing normal output to `out`
/// and diagnostics to `err`. Returns one of ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace igbounds::cli
