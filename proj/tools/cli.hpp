#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ptlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCapacity = 2;
/// A quantum executor lost a round, a certainty check failed, or a framework
/// theorem check failed.
inline constexpr int kExitViolation = 3;

/// Runs the tool on `args` (args[0] is the program name) and returns the
/// process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptlab::cli
