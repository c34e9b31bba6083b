#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dendro {

// Exit codes of the command line tool.
enum ExitCode { kExitOk = 0, kExitInvalid = 2, kExitLimit = 3 };

// Runs the tool on the arguments after the program name. Results and JSON error
// bodies go to out, usage text to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dendro
