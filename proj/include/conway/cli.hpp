#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conway {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitParse = 2, kExitDomain = 3 };

/// Runs `topograph <args...>` with the given streams and returns the exit
/// code. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace conway
