#pragma once

// Command-line front end.

#include <iosfwd>
#include <string>
#include <vector>

namespace rowmotion::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// Runs one command.  `args` excludes the program name.  Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rowmotion::cli
