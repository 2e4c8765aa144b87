#pragma once

#include <array>
#include <span>
#include <vector>

#include "rifclark/poly.hpp"
#include "rifclark/rif.hpp"
#include "rifclark/types.hpp"

namespace rifclark {

/// Samples of one parametrizing function zeta_d = g(zeta') over the uniform
/// tensor grid of T^{d-1}, row-major (last base coordinate fastest).
struct HyperBranch {
  Complex alpha;
  int base_dims = 0;
  std::size_t grid_n = 0;
  std::vector<Complex> values;
  /// 1 / |d phi / d z_d| at each sample.
  std::vector<double> weights;

  std::size_t size() const { return values.size(); }
  /// Base point of flat sample index i.
  std::vector<Complex> base_point(std::size_t i) const;
};

struct PolydiskMeasure {
  Complex alpha;
  int dims = 0;
  std::size_t grid_n = 0;
  std::vector<HyperBranch> branches;
  StabilityCertificate certificate;
};

/// Clark measure of a RIF in d = 2 or 3 variables without singularities on
/// the closed polydisk. Refuses inputs whose stability certificate reaches
/// modulus 1 + 1e-6 or less. The default certificate grid is 64 for d = 2
/// and 8 for d = 3.
PolydiskMeasure build_measure_d(const Rif& phi, Complex alpha, std::size_t grid_n, int stability_grid = 0);

/// Tensor trapezoid rule; f receives the full d-point.
template <class F>
Complex integrate_d(const PolydiskMeasure& mu, F&& f) {
  Complex total = 0.0;
  std::vector<Complex> z(static_cast<std::size_t>(mu.dims));
  for (const auto& b : mu.branches) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto base = b.base_point(i);
      std::copy(base.begin(), base.end(), z.begin());
      z.back() = b.values[i];
      acc += Complex(f(std::span<const Complex>(z))) * b.weights[i];
    }
    total += acc / static_cast<double>(b.size());
  }
  return total;
}

double total_mass_d(const PolydiskMeasure& mu);

/// Largest |p~ - alpha p| / scale over all samples.
double max_level_residual_d(const Rif& phi, const PolydiskMeasure& mu);

struct PoissonCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_error = 0.0;
};

/// (1 - |phi(z)|^2) / |alpha - phi(z)|^2 against the product Poisson kernel
/// integrated over the measure.
PoissonCheck verify_poisson_d(const PolydiskMeasure& mu, const Rif& phi, std::span<const Complex> z);

/// phi_s = (s z1 z2 z3 - z1 z2 - z1 z3 - z2 z3) / (s - z1 - z2 - z3).
Rif tridisk_rif(double s);

/// The unique zeta_3 with phi_s(zeta_1, zeta_2, zeta_3) = alpha. Throws
/// SingularDenominator where the closed form breaks down.
Complex tridisk_level(double s, Complex alpha, Complex z1, Complex z2);

/// Closed-form Clark weight of phi_s over (zeta_1, zeta_2).
double tridisk_weight(double s, Complex alpha, Complex z1, Complex z2);

/// Poisson identity for phi_s using the closed forms on a uniform
/// grid_n x grid_n grid.
PoissonCheck verify_poisson_tridisk(double s, Complex alpha, const std::array<Complex, 3>& z, std::size_t grid_n);

}  // namespace rifclark
