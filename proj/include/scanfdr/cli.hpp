#pragma once

#include <ostream>

namespace scanfdr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one `scanfdr <subcommand> [flags]` invocation, writing results to
/// `out` and diagnostics to `err`. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scanfdr::cli
