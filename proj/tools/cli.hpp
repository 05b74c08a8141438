#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace birkhoff::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;   // bad flags, malformed JSON or CSV
inline constexpr int kExitModule = 3;  // any other library error
inline constexpr int kExitIo = 4;

// Runs the command line (args excludes the program name). Data goes to out,
// diagnostics and the error JSON to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace birkhoff::cli
