#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bvlab {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

// Runs the bvlab command line (args exclude the program name). Reports go to --out or
// to `out`; diagnostics and failure JSON go to `err`. A run manifest is written on
// every exit path except --help.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bvlab
