#pragma once

#include <span>
#include <vector>

#include "rifclark/types.hpp"

namespace rifclark {

/// All roots of sum_k c[k] z^k (ascending coefficients, c.back() != 0) by
/// Aberth-Ehrlich simultaneous iteration. Iteration for a root stops once its
/// backward error reaches a few ulps of the coefficient scale, so clustered
/// and multiple roots terminate as well.
///
/// Throws Error(RootFindFailure) when some root fails to converge.
std::vector<Complex> polynomial_roots(std::span<const Complex> c);

/// Horner value of the polynomial and its derivative.
struct HornerValue {
  Complex value;
  Complex derivative;
  /// sum_k |c_k| |z|^k, the natural scale for the rounding error of `value`.
  double magnitude;
};
HornerValue horner(std::span<const Complex> c, Complex z);

/// Up to `iterations` Newton steps; stops early when the derivative vanishes
/// or the step stops shrinking.
Complex newton_polish(std::span<const Complex> c, Complex z, int iterations);

/// Drops leading coefficients below rel_tol * max|c|. Returns true when
/// anything was dropped.
bool trim_leading(std::vector<Complex>& c, double rel_tol);

}  // namespace rifclark
