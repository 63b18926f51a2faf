#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pagame::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;   // validation or solver error
inline constexpr int kExitUsage = 2;

/// Runs one CLI invocation. `args[0]` is the program name. Reports go to
/// `out`, every error message to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pagame::cli
