#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace novikov {

enum ExitCode : int { kExitOk = 0, kExitVerdictFalse = 1, kExitUsage = 2, kExitNumerical = 3 };

/// Parses "3..15", "3,5,7" or mixtures like "3..5,9"; throws std::invalid_argument.
std::vector<int> parse_index_list(const std::string& s);

/// Entry point of the novikov command line tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace novikov
