#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace laver::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCounterexample = 2;

// Runs the command line `args` (without the program name). Results go to
// out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace laver::cli
