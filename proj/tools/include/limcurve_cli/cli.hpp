#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace limcurve::cli {

// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace limcurve::cli
