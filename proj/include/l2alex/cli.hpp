#pragma once

// Command dispatch for the l2alex executable.

#include <iosfwd>
#include <string>
#include <vector>

namespace l2alex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitDegenerate = 3;

/// Runs one command. args excludes the program name. Results go to out,
/// diagnostics to err; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "lo:hi:n" into n geometric points.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace l2alex::cli
