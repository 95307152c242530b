#pragma once

#include <iosfwd>

namespace qhm::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitSuiteFailure = 1;
inline constexpr int kExitConfigError = 2;

/// qhm <command> [--config <path>] [--set key=value]... [--out <path>]
/// Writes the JSON report to --out (or `out` when absent) and a one-line
/// summary per check to `log`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

}  // namespace qhm::cli
