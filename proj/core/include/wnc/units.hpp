#pragma once

#include <cmath>
#include <string_view>
#include <vector>

namespace wnc {

/// p[W] = 10^((dBm - 30) / 10).
inline double dbm_to_watts(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watts_to_dbm(double watts) noexcept { return 10.0 * std::log10(watts) + 30.0; }

/// Parses a power value with a mandatory unit suffix: "20 dBm", "-40dBm",
/// "0.1 W", "100 mW". Unitless input is rejected with std::invalid_argument.
double parse_power(std::string_view text);

/// Parses a power grid with one trailing unit: either a comma list
/// ("0,10,20 dBm") or an inclusive range start:step:stop ("0:2:40 dBm").
/// The result must be strictly increasing.
std::vector<double> parse_power_grid(std::string_view text);

}  // namespace wnc
