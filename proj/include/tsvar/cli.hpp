#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tsvar::cli {

inline constexpr std::string_view kVersion = "1.0.0";

/// Exit codes of `run`.
enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2 };

/**
 * Runs one subcommand. `args` excludes the program name. Results go to `out`
 * (or the `-o` path), diagnostics to `err`.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsvar::cli
