#pragma once

#include <ostream>

namespace vamci::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitInternal = 4;

// Entry point of the `vamci` tool: subcommands ingest, features, evaluate, simulate,
// report. Never throws; errors become a diagnostic on `err` and an exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vamci::cli
