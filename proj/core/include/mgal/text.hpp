#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mgal::text {

// Shortest form that parses back to the same double.
std::string format_exact(double x);
std::string format_fixed(double x, int decimals);

// Whole-token parse; throws ValidationError naming `what` on failure.
double parse_double(std::string_view token, std::string_view what);
std::size_t parse_index(std::string_view token, std::string_view what);

std::string_view trim(std::string_view s);
// Splits on any character in `delims`, dropping empty tokens.
std::vector<std::string_view> split(std::string_view s, std::string_view delims);

}  // namespace mgal::text
