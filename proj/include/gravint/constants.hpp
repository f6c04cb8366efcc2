#pragma once

// Physical constants and default Earth parameters (SI units).

namespace gravint::constants {

inline constexpr double speed_of_light = 299792458.0;           // m/s, exact
inline constexpr double hbar = 1.054571817e-34;                 // J s, exact
inline constexpr double earth_gm = 3.986004418e14;              // m^3/s^2
inline constexpr double earth_radius = 6.371e6;                 // m (mean)
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Frequency support of analytic gaussian modes, in units of sigma^{-1/2}.
inline constexpr double gaussian_support_halfwidth = 8.0;

// Weak-field validity guard on h/r.
inline constexpr double max_separation_ratio = 1e-2;

}  // namespace gravint::constants
