#pragma once

#include <iosfwd>

namespace marginrisk::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kInternalError = 2,
};

/// Runs the tool with `argv[0]` as the program name. Normal output goes to
/// `out`, diagnostics and usage text to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace marginrisk::cli
