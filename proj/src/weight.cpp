#include "rifclark/weight.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <vector>

#include "rifclark/errors.hpp"

namespace rifclark {

WeightSample weight_at(const Rif& phi, std::span<const Complex> point, Complex alpha) {
  const int last = phi.dims() - 1;
  const Complex p = eval(phi.denominator(), point);
  const Complex dq = eval_partial(phi.numerator(), last, point);
  const Complex dp = eval_partial(phi.denominator(), last, point);
  WeightSample w;
  w.numerator = std::abs(p);
  w.denominator = std::abs(dq - alpha * dp);
  const double scale = std::max(phi.denominator().max_abs_coeff(), phi.numerator().max_abs_coeff());
  const double tol = kWeightTol * scale;
  if (w.denominator <= tol) {
    if (w.numerator <= tol) {
      w.zero_over_zero = true;
      w.value = 0.0;
    } else {
      w.value = std::numeric_limits<double>::infinity();
    }
    return w;
  }
  w.value = w.numerator <= tol ? 0.0 : w.numerator / w.denominator;
  return w;
}

WeightSample weight_at(const Rif& phi, Complex zeta, Complex g, Complex alpha) {
  const Complex z[2] = {zeta, g};
  return weight_at(phi, std::span<const Complex>(z, 2), alpha);
}

double line_constant(const Rif& phi, int axis, Complex tau, Complex alpha) {
  if (phi.dims() != 2) throw Error(ErrorCode::DimensionMismatch, "line constants are defined for two variables");
  if (axis != 1 && axis != 2) throw Error(ErrorCode::InvalidArgument, "axis must be 1 or 2");
  const PolyMD level = phi.level_polynomial(alpha);
  const double scale = phi.denominator().max_abs_coeff();
  const int var = axis - 1;

  std::vector<double> moduli;
  for (int k = 0; k < 32 && moduli.size() < 8; ++k) {
    const Complex w = unimodular(kTwoPi * k / 8.0 + 0.3 + 0.05 * (k / 8));
    Complex z[2];
    z[var] = tau;
    z[1 - var] = w;
    const std::span<const Complex> pt(z, 2);
    const Complex p = eval(phi.denominator(), pt);
    if (std::abs(p) < 1e-6 * scale) continue;  // too close to a zero of p
    moduli.push_back(std::abs(eval_partial(level, var, pt) / p));
  }
  if (moduli.size() < 8) throw Error(ErrorCode::PreconditionFailed, "p vanishes along the line");
  const auto [lo, hi] = std::minmax_element(moduli.begin(), moduli.end());
  double mean = 0.0;
  for (double m : moduli) mean += m;
  mean /= static_cast<double>(moduli.size());
  if (mean == 0.0 || (*hi - *lo) > 1e-8 * mean) {
    std::ostringstream msg;
    msg << "|d phi/d z_" << axis << "| is not constant on the line z_" << axis << " = " << tau << " (range ["
        << *lo << ", " << *hi << "]); phi is not identically " << alpha << " there";
    throw Error(ErrorCode::NonConstantDerivative, msg.str());
  }
  return 1.0 / mean;
}

}  // namespace rifclark
