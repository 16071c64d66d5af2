#pragma once

#include "hypersect/types.hpp"

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hypersect {

/// `key = value` lines; `#` starts a comment; later keys override earlier ones.
std::map<std::string, std::string> parse_key_values(std::istream& in);
std::map<std::string, std::string> read_key_value_file(const std::string& path);

std::string trim(std::string_view s);

/// Comma-separated decimals, e.g. "1,0.5,-2".
std::vector<double> parse_doubles(std::string_view text);
Vec parse_point(std::string_view text);
/// Semicolon-separated points, e.g. "0,0;1,0".
std::vector<Vec> parse_points(std::string_view text);
/// One point per non-empty, non-comment line.
std::vector<Vec> read_points_file(const std::string& path);

/// Shortest text that reads back to the same double.
std::string format_double(double v);
std::string format_doubles(const std::vector<double>& values);
std::string format_point(const Vec& x);

}  // namespace hypersect
