#pragma once

#include <string>
#include <vector>

namespace spinmem {

// Parses "2", "1,3,5", or "1..6" (inclusive range) into a sorted-as-given
// list of integers.  Throws std::invalid_argument on malformed input.
std::vector<int> parse_int_list(const std::string& text);

// Parses a comma-separated list of real numbers ("1,2.5,10").  Integer
// ranges ("a..b") are accepted too and expand to whole numbers.
std::vector<double> parse_value_list(const std::string& text);

// Entry point for the command-line tool.  Returns the process exit code:
// 0 on success, 1 on usage/configuration errors, 2 on numerical failures
// (consistency checks exceeding tolerance).
int run_cli(int argc, const char* const* argv);

}  // namespace spinmem
