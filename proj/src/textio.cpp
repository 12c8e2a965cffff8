#include "ghom/textio.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ghom {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

}  // namespace

double parse_double(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("empty number");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw ConfigError("cannot parse number '" + text + "'");
    if (!std::isfinite(v)) throw ConfigError("non-finite number '" + text + "'");
    return v;
}

int parse_int(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("empty integer");
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size())
        throw ConfigError("cannot parse integer '" + text + "'");
    return static_cast<int>(v);
}

double parse_angle(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) throw ConfigError("empty angle");
    double sign = 1.0;
    if (t[0] == '-') {
        sign = -1.0;
        t = trim(t.substr(1));
    } else if (t[0] == '+') {
        t = trim(t.substr(1));
    }
    if (t == "pi") return sign * kPi;
    if (t == "pi/2") return sign * kPi / 2.0;
    if (t == "pi/3") return sign * kPi / 3.0;
    if (t == "pi/4") return sign * kPi / 4.0;
    if (t == "pi/6") return sign * kPi / 6.0;
    if (t == "acos(1/sqrt3)") return sign * std::acos(1.0 / std::sqrt(3.0));
    return sign * parse_double(t);
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const std::string& item : split(text, ',')) out.push_back(parse_double(item));
    return out;
}

std::vector<double> parse_angle_list(const std::string& text) {
    std::vector<double> out;
    for (const std::string& item : split(text, ',')) out.push_back(parse_angle(item));
    return out;
}

std::vector<double> RangeSpec::points() const {
    std::vector<double> pts(count);
    const double step = (max - min) / (count - 1);
    for (int i = 0; i < count; ++i) {
        double p = min + i * step;
        if (std::abs(p) < 1e-12 * std::max(1.0, max - min)) p = 0.0;
        pts[i] = p;
    }
    return pts;
}

RangeSpec parse_range(const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3)
        throw ConfigError("range spec must be min:max:count, got '" + text + "'");
    RangeSpec r;
    r.min = parse_double(parts[0]);
    r.max = parse_double(parts[1]);
    r.count = parse_int(parts[2]);
    if (r.count < 2) throw ConfigError("range needs count >= 2, got '" + text + "'");
    if (!(r.min < r.max)) throw ConfigError("range needs min < max, got '" + text + "'");
    return r;
}

std::string format_sig(double x, int precision) {
    if (x == 0.0) x = 0.0;  // collapse -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              " is not 'key = value': '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        out.emplace_back(key, val);
    }
    return out;
}

}  // namespace ghom
