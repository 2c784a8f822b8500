#include "areavolt/phasor.hpp"

#include <cmath>

namespace areavolt {

Phasor from_polar_deg(double magnitude, double angle_deg) {
  // std::polar requires a non-negative, non-NaN magnitude; measured data may not be.
  const double rad = deg_to_rad(angle_deg);
  return {magnitude * std::cos(rad), magnitude * std::sin(rad)};
}

double angle_deg(Phasor value) noexcept {
  if (std::abs(value) == 0.0) return 0.0;
  return rad_to_deg(std::arg(value));
}

double wrap_deg(double angle) noexcept {
  double wrapped = std::remainder(angle, 360.0);
  if (wrapped <= -180.0) wrapped += 360.0;
  return wrapped;
}

bool is_finite(Phasor value) noexcept {
  return std::isfinite(value.real()) && std::isfinite(value.imag());
}

double relative_error(Phasor actual, Phasor expected) noexcept {
  const double scale = std::abs(expected);
  const double diff = std::abs(actual - expected);
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace areavolt
