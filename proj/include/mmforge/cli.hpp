#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mmforge {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitBadInput = 2, kExitGenericPosition = 3 };

/// Runs one subcommand (construct, verify, bound, search, catalog). `args`
/// excludes the program name. Artifacts go to --out or `out`; messages to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mmforge
