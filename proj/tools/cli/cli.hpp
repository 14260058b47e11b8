#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hbb::cli {

/// Exit codes: 0 success, 1 runtime or I/O failure, 2 malformed input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands a sweep range: "lo:hi:n" (n evenly spaced values, ends included),
/// a comma list, or a single value. Throws std::invalid_argument.
std::vector<double> parse_range(const std::string& text);

/// Like parse_range, but list entries may be "inf".
std::vector<std::string> parse_exponent_range(const std::string& text);

}  // namespace hbb::cli
