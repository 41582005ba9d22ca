#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omega::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kSuccess = 0,
  kDomain = 2,      // domain, degenerate, pole collision
  kNoSolution = 3,  // no solution, no convergence, failed certificate
  kUsage = 64,
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics and help text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "lo:hi:step" -> lo, lo + step, ..., up to hi inclusive.
std::vector<double> parse_grid(const std::string& text);

}  // namespace omega::cli
