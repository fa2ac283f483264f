#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xorsat::cli {

inline constexpr int kExitOk = 0;
/// I/O failures and invalid option values.
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitGuard = 3;
inline constexpr int kExitGeneration = 4;

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --out redirects them to a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xorsat::cli
