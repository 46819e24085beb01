#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pgs/optimizer.hpp"

namespace pgs::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidArguments = 2,
  kInfeasible = 3,
  kResourceCap = 4,
};

enum class OutputFormat { Text, Json, Csv };

/// Runs one invocation. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "2..5,7,inf" into ascending, de-duplicated block counts with the
/// infinite sentinel last. Throws BadK on malformed input or K < 2.
std::vector<BlockCount> parse_k_list(std::string_view text, bool allow_infinite = true);

// Text reports: 6 significant digits.
std::string format_text(double x);
// CSV and other machine output: shortest representation that round-trips.
std::string format_exact(double x);
// RFC 4180 field quoting.
std::string csv_field(std::string_view field);

}  // namespace pgs::cli
