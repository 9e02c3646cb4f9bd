#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace increments::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kUsageError = 2 };

/// Runs one subcommand (solve, laplace, generator, simulate, verify).
/// `args` excludes the program name. Artifacts go to `out` unless --output
/// names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Appends `--key value` for every `key=value` line of the file named by
/// --config whose key is not already given on the command line.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

} // namespace increments::cli
