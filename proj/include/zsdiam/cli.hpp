#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zsdiam {

enum ExitCode : int { kExitOk = 0, kExitFinding = 1, kExitBudget = 2, kExitUsage = 64 };

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "3", "2..8" or "2,4,6"; ranges are inclusive.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace zsdiam
