#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opacity::cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitInputError = 2;

/// Runs the tool on `args` (without the program name). Returns the process
/// exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opacity::cli
