#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coaudit {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitUsage = 2 };

/// Runs the `coaudit` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coaudit
