#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace diamond {

/// Exit codes of the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_violation = 1;
inline constexpr int exit_usage = 2;

/// Runs one command. args excludes the program name, e.g. {"analyze", "--g01", "3", ...}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diamond
