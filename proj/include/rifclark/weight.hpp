#pragma once

#include <span>

#include "rifclark/rif.hpp"

namespace rifclark {

/// Numerator/denominator below tol * (coefficient scale) count as zero.
inline constexpr double kWeightTol = 1e-12;

struct WeightSample {
  double value = 0.0;
  double numerator = 0.0;    // |p|
  double denominator = 0.0;  // |d_{z_d} p~ - alpha d_{z_d} p|
  /// Both vanish; value is meaningless and must be filled by the caller.
  bool zero_over_zero = false;
};

/// Clark weight |p| / |d_{z_d}(p~ - alpha p)| at a point of the level set,
/// which equals 1/|d phi/d z_d| off the zero set of p. The last coordinate is
/// the branch value.
WeightSample weight_at(const Rif& phi, std::span<const Complex> point, Complex alpha);
WeightSample weight_at(const Rif& phi, Complex zeta, Complex g, Complex alpha);

/// Mass density of a line component on which phi is identically alpha.
///
/// axis = 1 freezes z_1 = tau (vertical line), axis = 2 freezes z_2 = tau.
/// |d phi/d z_axis| is evaluated through d_axis(p~ - alpha p) / p at eight
/// points of the line and must be constant there (relative spread < 1e-8);
/// the reciprocal is returned. Throws NonConstantDerivative otherwise.
double line_constant(const Rif& phi, int axis, Complex tau, Complex alpha);

}  // namespace rifclark
