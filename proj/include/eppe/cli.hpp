#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eppe {

// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1, // usage error, or a verify run that did not pass
    kExitParse = 2,
    kExitShape = 3,
    kExitBudget = 4,
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace eppe
