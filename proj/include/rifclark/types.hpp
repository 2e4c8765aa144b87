#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace rifclark {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e^{i theta}
inline Complex unimodular(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Distance between two points of the circle measured by the angle between them.
inline double angular_distance(Complex a, Complex b) { return std::abs(std::arg(a * std::conj(b))); }

/// Angle in [0, 2pi).
inline double angle_of(Complex z) {
  double t = std::arg(z);
  return t < 0.0 ? t + kTwoPi : t;
}

inline bool is_unimodular(Complex z, double tol) { return std::abs(std::abs(z) - 1.0) <= tol; }

/// One-variable Poisson kernel P_z(zeta) = (1 - |z|^2) / |zeta - z|^2.
inline double poisson_kernel(Complex z, Complex zeta) {
  return (1.0 - std::norm(z)) / std::norm(zeta - z);
}

}  // namespace rifclark
