#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pid {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,  ///< a reproduction cell or axiom check failed
    kExitArgument = 2,
    kExitSolver = 3,
};

/// Runs the command line `args` (without the program name). Data goes to
/// `out`, diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pid
