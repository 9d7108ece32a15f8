#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alexq::cli {

// Exit codes shared by every subcommand.
inline constexpr int kTrue = 0;
inline constexpr int kFalse = 1;
inline constexpr int kUsage = 2;
inline constexpr int kInvalid = 3;
inline constexpr int kInternal = 4;  // deciders disagreed or a witness failed to verify

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alexq::cli
