#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace finsim::units {

// Multiplier to base SI for a unit token ("mm" -> 1e-3). Compound SI units
// used by the config schema (N/m, N*s/m, ...) map to 1. Nullopt if unknown.
std::optional<double> factor(std::string_view unit);

// Parses "number [unit]" into a base-SI value: "2 mm" -> 0.002, "212mA"
// -> 0.212, "30%" -> 0.3, "0.135" -> 0.135. Throws std::invalid_argument
// with the offending token on malformed input.
double parse_quantity(std::string_view text);

// Shortest round-trip decimal form, locale independent (std::to_chars).
std::string format_double(double v);

}  // namespace finsim::units
