#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace texnet::detail {

/// Strips surrounding spaces, tabs and a trailing carriage return.
std::string_view trim(std::string_view s) noexcept;

/// Splits on commas; no quoting.
std::vector<std::string_view> split_fields(std::string_view line);

/// Strict numeric parsing of the whole field; returns false on junk.
bool parse_double(std::string_view s, double& out);
bool parse_size(std::string_view s, std::size_t& out);

/// printf-style "%.*g" / "%.*f" without locale surprises.
std::string format_significant(double v, int digits);
std::string format_fixed(double v, int decimals);

} // namespace texnet::detail
