#pragma once

#include <string>
#include <string_view>

namespace urllc::cli {

// Shortest decimal that parses back to the same double; "nan", "inf", "-inf"
// for non-finite values.
std::string format_number(double value);

// Parses format_number output (including the non-finite spellings).
double parse_number(std::string_view text);

}  // namespace urllc::cli
