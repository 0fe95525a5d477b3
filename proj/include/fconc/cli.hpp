#pragma once

#include <ostream>
#include <span>
#include <string>

namespace fconc::cli {

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kConvergence = 3,
};

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fconc::cli
