#pragma once

#include <string>

namespace stallnet {

// Shortest decimal that round-trips to the exact same double (std::to_chars).
// All file formats print floating-point values through this one function.
std::string format_double(double value);

void append_double(std::string& out, double value);

// Strict double parse of a full token; throws ValidationError on trailing garbage.
double parse_double(const std::string& token);

}  // namespace stallnet
