#include "finsim/units.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

namespace finsim::units {

namespace {

const std::unordered_map<std::string_view, double>& unit_table() {
    static const std::unordered_map<std::string_view, double> table = {
        {"m", 1.0},     {"mm", 1e-3},  {"cm", 1e-2},  {"um", 1e-6},
        {"kg", 1.0},    {"g", 1e-3},   {"mg", 1e-6},
        {"A", 1.0},     {"mA", 1e-3},
        {"s", 1.0},     {"ms", 1e-3},
        {"Hz", 1.0},    {"kHz", 1e3},
        {"ohm", 1.0},   {"Ohm", 1.0},
        {"H", 1.0},     {"mH", 1e-3},
        {"N", 1.0},     {"mN", 1e-3},
        {"W", 1.0},     {"mW", 1e-3},
        {"rad", 1.0},   {"deg", M_PI / 180.0},
        {"%", 0.01},    {"percent", 0.01},
        // compound tokens are already base SI
        {"N/m", 1.0},   {"N*s/m", 1.0},  {"N*s^2/m^2", 1.0},
        {"kg*m^2", 1.0}, {"N*m*s^2", 1.0}, {"m/s", 1.0}, {"kg/m^3", 1.0},
        {"N/A", 1.0},
    };
    return table;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::optional<double> factor(std::string_view unit) {
    auto it = unit_table().find(unit);
    if (it == unit_table().end()) return std::nullopt;
    return it->second;
}

double parse_quantity(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty value");
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{}) {
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    }
    std::string_view rest = trim(std::string_view(ptr, static_cast<std::size_t>(s.data() + s.size() - ptr)));
    if (rest.empty()) return value;
    auto f = factor(rest);
    if (!f) throw std::invalid_argument("unknown unit '" + std::string(rest) + "' in '" + std::string(s) + "'");
    return value * *f;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace finsim::units
