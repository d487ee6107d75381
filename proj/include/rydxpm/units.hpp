// Physical constants and unit conversion helpers. All internal bookkeeping
// is SI (seconds, meters, rad/s); conversions live at the parameter layer.
#pragma once

#include <numbers>

namespace rydxpm::units {

inline constexpr double c_light = 299792458.0;  // m/s
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Ordinary frequency in MHz -> angular frequency in rad/s.
inline constexpr double mhz_to_rad_per_s(double f_mhz) {
    return two_pi * f_mhz * 1e6;
}

/// Ordinary frequency in GHz -> angular frequency in rad/s.
inline constexpr double ghz_to_rad_per_s(double f_ghz) {
    return two_pi * f_ghz * 1e9;
}

inline constexpr double micrometer = 1e-6;  // m
inline constexpr double nanometer = 1e-9;   // m

/// One micrometer^6, for van-der-Waals coefficients quoted in um^6.
inline constexpr double um6 = 1e-36;  // m^6

}  // namespace rydxpm::units
