#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nsvoa {

/// Exit statuses of the command-line front end.
enum ExitCode { kExitOk = 0, kExitInvalid = 2, kExitVerification = 3 };

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics and the cache-hit marker to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nsvoa
