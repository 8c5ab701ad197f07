#pragma once

#include <ostream>

namespace fmaxwell::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitNumerical = 4;

// Runs the command line `fmaxwell <subcommand> [flags]`. Results go to `out`
// (or the --output file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fmaxwell::cli
