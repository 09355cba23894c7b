#pragma once
// command-line front end; the dfo binary is a thin wrapper around run_cli

#include <iosfwd>
#include <string>
#include <vector>

namespace dfo {

// exit codes
constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;  // proof fails, sequent invalid, counterexample found
constexpr int kExitUsage = 2;     // bad arguments or unparsable input

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dfo
