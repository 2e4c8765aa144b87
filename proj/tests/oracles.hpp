#pragma once

// Independent reference formulas for the tests. Nothing here calls into the
// library's evaluation, root finding or tracing code.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "rifclark/poly.hpp"
#include "rifclark/rif.hpp"

namespace oracle {

using Complex = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;

inline Complex e(double t) { return std::polar(1.0, t); }

/// Sum of c_k z^k over the flat row-major exponent box, with explicit powers.
inline Complex naive_eval(const std::vector<int>& degrees, const std::vector<Complex>& coeffs,
                          const std::vector<Complex>& z) {
  Complex total = 0.0;
  std::vector<int> ex(degrees.size(), 0);
  for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t a = degrees.size(); a-- > 0;) {
      ex[a] = static_cast<int>(rem % static_cast<std::size_t>(degrees[a] + 1));
      rem /= static_cast<std::size_t>(degrees[a] + 1);
    }
    Complex term = coeffs[flat];
    for (std::size_t a = 0; a < degrees.size(); ++a) term *= std::pow(z[a], ex[a]);
    total += term;
  }
  return total;
}

// 2 - z1 - z2 and 2 - z1^2 - z2^2.
inline rifclark::PolyMD fav_denominator() { return rifclark::PolyMD({1, 1}, {2.0, -1.0, -1.0, 0.0}); }
inline rifclark::PolyMD e_denominator() {
  return rifclark::PolyMD({2, 2}, {2.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0});
}
inline rifclark::Rif fav() { return rifclark::Rif::from_denominator(fav_denominator()); }
inline rifclark::Rif phi_e() { return rifclark::Rif::from_denominator(e_denominator()); }
inline rifclark::Rif monomial() {
  return rifclark::Rif::from_denominator(rifclark::PolyMD({0, 0}, {1.0}), {1, 1});
}
/// phi = (1 + 2 z1 z2) / (2 + z1 z2), phi(0) = 1/2.
inline rifclark::Rif half() { return rifclark::Rif::from_denominator(rifclark::PolyMD({1, 1}, {2.0, 0.0, 0.0, 1.0})); }

inline Complex fav_phi(Complex z1, Complex z2) { return (2.0 * z1 * z2 - z1 - z2) / (2.0 - z1 - z2); }
inline Complex e_phi(Complex z1, Complex z2) {
  return (2.0 * z1 * z1 * z2 * z2 - z1 * z1 - z2 * z2) / (2.0 - z1 * z1 - z2 * z2);
}
inline Complex half_phi(Complex z1, Complex z2) { return (1.0 + 2.0 * z1 * z2) / (2.0 + z1 * z2); }

/// Level set of fav over zeta: the Moebius map solving fav = alpha.
inline Complex fav_branch(Complex alpha, Complex zeta) {
  return (2.0 * alpha + (1.0 - alpha) * zeta) / (2.0 * zeta - (1.0 - alpha));
}
/// 1 / |d fav / d z2| on the level set.
inline double fav_weight(Complex zeta, Complex g) {
  const Complex den = 2.0 - zeta - g;
  const Complex d2 = ((2.0 * zeta - 1.0) * den + (2.0 * zeta * g - zeta - g)) / (den * den);
  return 1.0 / std::abs(d2);
}

inline double poisson(Complex z, Complex zeta) { return (1.0 - std::norm(z)) / std::norm(zeta - z); }

inline Complex tridisk_phi(double s, Complex z1, Complex z2, Complex z3) {
  return (s * z1 * z2 * z3 - z1 * z2 - z1 * z3 - z2 * z3) / (s - z1 - z2 - z3);
}

inline Complex random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return radius * std::sqrt(u(rng)) * e(2.0 * kPi * u(rng));
}

inline double angular_gap(Complex a, Complex b) { return std::abs(std::arg(a * std::conj(b))); }

}  // namespace oracle
