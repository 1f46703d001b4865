#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperlace::cli {

/// Exit codes: 0 success, 1 a check failed (selftest, verify), 2 module
/// error (JSON error report on `out`), 64 usage error (help on `err`).
inline constexpr int kExitFailed = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitUsage = 64;

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperlace::cli
