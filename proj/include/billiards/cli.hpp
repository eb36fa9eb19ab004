#pragma once

#include <ostream>

namespace billiards::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;

/// Entry point of the `billiards` tool. Subcommands: curve-info, orbit,
/// polygon, deficit-sweep, extract, beta, verify-tab, verify-omega,
/// verify-series. Returns 0 on success, 2 on invalid input, 3 when a solver
/// fails.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace billiards::cli
