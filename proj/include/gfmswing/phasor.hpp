#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace gfmswing {

/// Complex per-unit quantity (voltage, current or impedance).
using Phasor = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle into (-pi, pi].
inline double normalize_angle(double rad)
{
    double a = std::remainder(rad, kTwoPi);
    if (a <= -kPi) {
        a += kTwoPi;
    }
    return a;
}

/// Wraps an angle into [0, 2pi).
inline double wrap_two_pi(double rad)
{
    double a = std::fmod(rad, kTwoPi);
    if (a < 0.0) {
        a += kTwoPi;
    }
    return a;
}

inline Phasor from_polar(double magnitude, double angle_rad) { return std::polar(magnitude, angle_rad); }

inline Phasor from_polar_deg(double magnitude, double angle_deg)
{
    return std::polar(magnitude, deg_to_rad(angle_deg));
}

inline double magnitude(Phasor p) { return std::abs(p); }

/// Phase angle in (-pi, pi].
inline double angle(Phasor p) { return normalize_angle(std::arg(p)); }

} // namespace gfmswing
