#pragma once

#include <array>
#include <span>
#include <vector>

#include "rifclark/levelset.hpp"
#include "rifclark/rif.hpp"
#include "rifclark/types.hpp"
#include "rifclark/weight.hpp"

namespace rifclark {

/// Clark measure of a two-variable RIF: weighted arc measures along the
/// traced branches plus Lebesgue measure on vertical lines.
struct ClarkMeasure {
  Complex alpha;
  std::vector<Branch> branches;
  /// Vertical lines z_1 = tau (axis 1). Horizontal lines are carried by
  /// constant branches.
  std::vector<LineComponent> lines;
  std::size_t grid_n = 0;
  AlphaClass::Kind kind = AlphaClass::Kind::Generic;
  /// Trace diagnostics.
  std::vector<std::size_t> collisions;
  std::vector<TorusPoint> singularities;
};

ClarkMeasure build_measure(const Rif& phi, Complex alpha, std::size_t grid_n);
ClarkMeasure build_measure(const Rif& phi, Complex alpha, const TraceOptions& options);

/// Calls f(z1, z2, w) for every quadrature node of the measure, where w is
/// the node's trapezoid weight (weight / N on branches, c / N on lines).
template <class F>
void for_each_node(const ClarkMeasure& mu, F&& f) {
  for (const auto& b : mu.branches) {
    const double scale = 1.0 / static_cast<double>(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b.weights[i] != 0.0) f(unimodular(b.theta[i]), b.values[i], b.weights[i] * scale);
    }
  }
  const std::size_t n = mu.grid_n;
  for (const auto& line : mu.lines) {
    const double w = line.constant / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex z = unimodular(kTwoPi * static_cast<double>(i) / static_cast<double>(n));
      if (line.axis == 1) f(line.tau, z, w);
      else f(z, line.tau, w);
    }
  }
}

/// Trapezoid rule on the uniform grid for the branch part and for each line.
template <class F>
Complex integrate(const ClarkMeasure& mu, F&& f) {
  Complex total = 0.0;
  for_each_node(mu, [&](Complex z1, Complex z2, double w) { total += Complex(f(z1, z2)) * w; });
  return total;
}

double total_mass(const ClarkMeasure& mu);

using BidiskPoint = std::array<Complex, 2>;

struct PoissonResidualReport {
  std::vector<BidiskPoint> test_points;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> rel_errors;

  double max_rel_error() const;
};

/// (1 - |phi(z)|^2) / |alpha - phi(z)|^2 against the quadrature of the
/// product Poisson kernel P_z at each test point.
PoissonResidualReport verify_poisson(const ClarkMeasure& mu, const Rif& phi, std::span<const BidiskPoint> points);

/// Moments c_{jk} = int conj(zeta_1)^j conj(zeta_2)^k dmu, 0 <= j,k <= D.
std::vector<Complex> moment_table(const ClarkMeasure& mu, int degree);

/// phi_mu = (H - 1) / (H + 1) with H = c_00 + 2 sum' c_jk z_1^j z_2^k.
class HerglotzReconstruction {
 public:
  HerglotzReconstruction(int degree, std::vector<Complex> moments);

  int degree() const { return degree_; }
  Complex moment(int j, int k) const;
  Complex herglotz(Complex z1, Complex z2) const;
  Complex operator()(Complex z1, Complex z2) const;

 private:
  int degree_;
  std::vector<Complex> moments_;
};

/// Requires a probability measure (mass 1 within 1e-6), else MassNotOne.
HerglotzReconstruction herglotz_reconstruct(const ClarkMeasure& mu, int degree);

}  // namespace rifclark
