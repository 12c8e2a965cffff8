#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ghom/errors.hpp"

namespace ghom {

// Angles in radians; the exact-phase spellings "pi", "pi/2", "pi/3", "pi/4",
// "pi/6", "acos(1/sqrt3)" (optionally with a leading '-') are accepted so EZC
// configurations can be given without decimal truncation.
double parse_angle(const std::string& text);

double parse_double(const std::string& text);
int parse_int(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);   // comma-separated
std::vector<double> parse_angle_list(const std::string& text);

// "min:max:count" range spec.
struct RangeSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 0;

    std::vector<double> points() const;
};

RangeSpec parse_range(const std::string& text);

// Float to text with the given number of significant digits; "-0" collapses to
// "0" so equal values always print identically.
std::string format_sig(double x, int precision);

// One "key = value" per line, '#' starts a comment, later duplicates win.
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path);

// Deterministic uniforms built directly on the raw mt19937_64 stream (the raw
// generator is specified by the standard; the distribution adapters are not),
// so seeded output is byte-identical across standard libraries.
class UniformRng {
  public:
    explicit UniformRng(std::uint64_t seed) : engine_(seed) {}

    double next01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }  // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * next01(); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace ghom
