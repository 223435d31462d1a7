#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace netprep::text {

// Shortest decimal representation that parses back to the same double.
std::string format_real(double value);

// Strict parse of a finite real; the whole token must be consumed.
std::optional<double> parse_real(std::string_view token);

std::string_view trim(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
std::string to_lower(std::string_view s);

// Splits "a,b,c" on commas. No quoting.
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace netprep::text
