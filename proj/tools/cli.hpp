#pragma once

#include <string>
#include <vector>

namespace spectra::cli {

/// Exit codes of the command-line driver.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kAuditFailed = 3,
    kInsufficientZeros = 4,
};

/// Runs the driver on `args` (args[0] is the program name) and returns the exit code.
int run(const std::vector<std::string>& args);

}  // namespace spectra::cli
