#pragma once

#include <ostream>

namespace fusion {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitIo = 1,         // unreadable file, malformed document
    kExitInfeasible = 2, // violated precondition of a construction
    kExitVerify = 3,     // input is not a fusion frame
};

/// Entry point of `fusionctl`; results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace fusion
