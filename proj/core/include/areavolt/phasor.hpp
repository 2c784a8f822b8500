#pragma once

#include <complex>
#include <numbers>

namespace areavolt {

/// Complex per-unit quantity: voltage, current, impedance, admittance or power.
using Phasor = std::complex<double>;

inline constexpr double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

Phasor from_polar_deg(double magnitude, double angle_deg);

/// Angle in degrees, wrapped to (-180, 180]. Zero for a zero phasor, where the
/// angle is undefined.
double angle_deg(Phasor value) noexcept;

/// Wraps an angle difference in degrees to (-180, 180].
double wrap_deg(double angle) noexcept;

bool is_finite(Phasor value) noexcept;

/// |actual - expected| / |expected|; falls back to the absolute error when
/// `expected` is zero.
double relative_error(Phasor actual, Phasor expected) noexcept;

}  // namespace areavolt
