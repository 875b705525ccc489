#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hashbound::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kRuntimeFailure = 2 };

/// Subcommands: bound, gen-data, train, eval, sweep. `args` excludes the
/// program name. `--config file.json` supplies defaults that flags override.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

/// Parses "a,b,c" or "lo:hi:step" (inclusive) into integers.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace hashbound::cli
