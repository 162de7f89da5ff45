#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rbci::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitEmptyInterval = 3;

/// Runs the `rbci` command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rbci::cli
