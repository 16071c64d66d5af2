#include "hypersect/config.hpp"

#include "hypersect/error.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace hypersect {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::InvalidParameter,
                        "config line " + std::to_string(lineno) + " is not key = value: " + stripped);
        }
        std::string key = trim(std::string_view(stripped).substr(0, eq));
        if (key.empty()) {
            throw Error(ErrorKind::InvalidParameter, "config line " + std::to_string(lineno) + " has an empty key");
        }
        out[std::move(key)] = trim(std::string_view(stripped).substr(eq + 1));
    }
    return out;
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidParameter, "cannot open config file " + path);
    return parse_key_values(in);
}

std::vector<double> parse_doubles(std::string_view text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        const std::string token = trim(text.substr(pos, comma - pos));
        if (token.empty()) throw Error(ErrorKind::InvalidParameter, "empty number in list '" + std::string(text) + "'");
        double v = 0.0;
        const auto* begin = token.data();
        const auto* end = token.data() + token.size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end) {
            throw Error(ErrorKind::InvalidParameter, "not a number: '" + token + "'");
        }
        values.push_back(v);
        pos = comma + 1;
    }
    return values;
}

Vec parse_point(std::string_view text) {
    const auto values = parse_doubles(text);
    return Eigen::Map<const Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::vector<Vec> parse_points(std::string_view text) {
    std::vector<Vec> points;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto semi = text.find(';', pos);
        if (semi == std::string_view::npos) semi = text.size();
        const std::string token = trim(text.substr(pos, semi - pos));
        if (!token.empty()) points.push_back(parse_point(token));
        pos = semi + 1;
    }
    return points;
}

std::vector<Vec> read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidParameter, "cannot open points file " + path);
    std::vector<Vec> points;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (!stripped.empty()) points.push_back(parse_point(stripped));
    }
    return points;
}

std::string format_double(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string format_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

std::string format_point(const Vec& x) {
    return format_doubles(std::vector<double>(x.data(), x.data() + x.size()));
}

}  // namespace hypersect
