#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace netcontract {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitValidation = 2;

// Runs one command line (without the program name), writing JSON to `out`
// and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netcontract
