#include "rifclark/polydisk.hpp"

#include <algorithm>
#include <sstream>

#include "rifclark/blaschke.hpp"
#include "rifclark/errors.hpp"
#include "rifclark/parallel.hpp"
#include "rifclark/weight.hpp"
#include "continuation.hpp"

namespace rifclark {

std::vector<Complex> HyperBranch::base_point(std::size_t i) const {
  const double h = kTwoPi / static_cast<double>(grid_n);
  if (base_dims == 1) return {unimodular(h * static_cast<double>(i))};
  return {unimodular(h * static_cast<double>(i / grid_n)), unimodular(h * static_cast<double>(i % grid_n))};
}

PolydiskMeasure build_measure_d(const Rif& phi, Complex alpha, std::size_t grid_n, int stability_grid) {
  const int d = phi.dims();
  if (d != 2 && d != 3) throw Error(ErrorCode::DimensionMismatch, "polydisk builder supports 2 or 3 variables");
  if (grid_n < 4) throw Error(ErrorCode::InvalidArgument, "grid must have at least 4 points per axis");
  if (!is_unimodular(alpha, 1e-9)) throw Error(ErrorCode::InvalidArgument, "alpha is not unimodular");

  PolydiskMeasure mu;
  mu.alpha = alpha;
  mu.dims = d;
  mu.grid_n = grid_n;
  mu.certificate = stability_check(phi.denominator(), stability_grid > 0 ? stability_grid : (d == 2 ? 64 : 8));
  if (!(mu.certificate.min_modulus_on_grid > 1.0 + 1e-6)) {
    std::ostringstream msg;
    msg << "denominator reaches the closed polydisk (smallest slice-root modulus "
        << mu.certificate.min_modulus_on_grid << ")";
    throw Error(ErrorCode::NotStable, msg.str());
  }

  const std::size_t n = static_cast<std::size_t>(phi.degree(d - 1));
  const LevelSlicer slicer(phi, alpha);
  const double h = kTwoPi / static_cast<double>(grid_n);
  const std::size_t rows = grid_n;
  const std::size_t cols = d == 2 ? 1 : grid_n;
  TraceOptions options;
  options.strict = true;

  auto fail = [](const char* what) { throw Error(ErrorCode::ContinuationCollision, what); };

  // Axis 1 with the remaining base coordinate fixed at 1.
  std::vector<std::vector<Complex>> column(rows);
  {
    detail::Tracer tracer(slicer, n, options,
                          [d](double t) {
                            return d == 2 ? std::vector<Complex>{unimodular(t)}
                                          : std::vector<Complex>{unimodular(t), Complex(1.0)};
                          },
                          nullptr);
    SliceSolution sol = tracer.solve_at(0.0);
    if (sol.status != SliceStatus::Ok || sol.roots.size() != n) fail("degenerate slice at the base point");
    std::sort(sol.roots.begin(), sol.roots.end(), [](Complex a, Complex b) { return angle_of(a) < angle_of(b); });
    for (auto& r : sol.roots) r /= std::abs(r);
    tracer.reset(sol.roots, 0.0);
    column[0] = tracer.values();
    for (std::size_t i = 1; i < rows; ++i) {
      if (!tracer.advance(h * static_cast<double>(i), false)) fail("degenerate slice along the first axis");
      column[i] = tracer.values();
    }
  }

  mu.branches.resize(n);
  for (auto& b : mu.branches) {
    b.alpha = alpha;
    b.base_dims = d - 1;
    b.grid_n = grid_n;
    b.values.resize(rows * cols);
    b.weights.resize(rows * cols);
  }
  parallel_for(rows, [&](std::size_t i) {
    const Complex z1 = unimodular(h * static_cast<double>(i));
    detail::Tracer tracer(slicer, n, options, [z1](double t) { return std::vector<Complex>{z1, unimodular(t)}; },
                          nullptr);
    tracer.reset(column[i], 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
      if (j > 0 && !tracer.advance(h * static_cast<double>(j), false)) fail("degenerate slice along the second axis");
      for (std::size_t k = 0; k < n; ++k) mu.branches[k].values[i * cols + j] = tracer.values()[k];
    }
  });

  parallel_for(rows * cols, [&](std::size_t idx) {
    std::vector<Complex> z = mu.branches.front().base_point(idx);
    z.push_back(0.0);
    for (auto& b : mu.branches) {
      z.back() = b.values[idx];
      const WeightSample w = weight_at(phi, z, alpha);
      if (!std::isfinite(w.value) || w.zero_over_zero) {
        throw Error(ErrorCode::ZeroOverZero, "weight undefined on a singularity-free level set");
      }
      b.weights[idx] = w.value;
    }
  });
  return mu;
}

double total_mass_d(const PolydiskMeasure& mu) {
  return integrate_d(mu, [](std::span<const Complex>) { return 1.0; }).real();
}

double max_level_residual_d(const Rif& phi, const PolydiskMeasure& mu) {
  const PolyMD level = phi.level_polynomial(mu.alpha);
  const double scale = level.max_abs_coeff();
  double worst = 0.0;
  for (const auto& b : mu.branches) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      auto z = b.base_point(i);
      z.push_back(b.values[i]);
      worst = std::max(worst, std::abs(eval(level, z)) / scale);
    }
  }
  return worst;
}

PoissonCheck verify_poisson_d(const PolydiskMeasure& mu, const Rif& phi, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != mu.dims) throw Error(ErrorCode::DimensionMismatch, "test point has the wrong dimension");
  for (Complex c : z) {
    if (std::abs(c) >= 1.0) throw Error(ErrorCode::PreconditionFailed, "test point is not in the open polydisk");
  }
  const Complex f = phi(z);
  PoissonCheck out;
  out.lhs = (1.0 - std::norm(f)) / std::norm(mu.alpha - f);
  out.rhs = integrate_d(mu, [&](std::span<const Complex> zeta) {
    double k = 1.0;
    for (std::size_t i = 0; i < zeta.size(); ++i) k *= poisson_kernel(z[i], zeta[i]);
    return k;
  }).real();
  out.rel_error = std::abs(out.lhs - out.rhs) / out.lhs;
  return out;
}

namespace {

void require_family_parameter(double s) {
  if (!(s >= 3.0)) throw Error(ErrorCode::InvalidArgument, "tridisk family needs s >= 3");
}

Complex level_denominator(double s, Complex alpha, Complex z1, Complex z2) { return s * z1 * z2 - z1 - z2 + alpha; }

}  // namespace

Rif tridisk_rif(double s) {
  require_family_parameter(s);
  // Degrees (1,1,1), row-major: index = 4 e1 + 2 e2 + e3.
  std::vector<Complex> c(8, Complex(0.0));
  c[0] = s;
  c[4] = c[2] = c[1] = -1.0;
  return Rif::from_denominator(PolyMD::with_shape({1, 1, 1}, std::move(c)));
}

Complex tridisk_level(double s, Complex alpha, Complex z1, Complex z2) {
  require_family_parameter(s);
  const Complex den = level_denominator(s, alpha, z1, z2);
  if (std::abs(den) < 1e-14) throw Error(ErrorCode::SingularDenominator, "tridisk level set is singular here");
  return (alpha * s - alpha * z1 - alpha * z2 + z1 * z2) / den;
}

double tridisk_weight(double s, Complex alpha, Complex z1, Complex z2) {
  require_family_parameter(s);
  const Complex den = level_denominator(s, alpha, z1, z2);
  if (std::abs(den) < 1e-14) throw Error(ErrorCode::SingularDenominator, "tridisk weight is singular here");
  const Complex num = s * s * z1 * z2 - s * (z1 * z1 * z2 + z1 * z2 * z2 + z1 + z2) + z1 * z1 + z1 * z2 + z2 * z2;
  return std::abs(num) / std::norm(den);
}

PoissonCheck verify_poisson_tridisk(double s, Complex alpha, const std::array<Complex, 3>& z, std::size_t grid_n) {
  const Rif phi = tridisk_rif(s);
  for (Complex c : z) {
    if (std::abs(c) >= 1.0) throw Error(ErrorCode::PreconditionFailed, "test point is not in the open tridisk");
  }
  const Complex f = phi(z);
  PoissonCheck out;
  out.lhs = (1.0 - std::norm(f)) / std::norm(alpha - f);
  const double h = kTwoPi / static_cast<double>(grid_n);
  std::vector<double> rows(grid_n);
  parallel_for(grid_n, [&](std::size_t i) {
    const Complex z1 = unimodular(h * static_cast<double>(i));
    const double p1 = poisson_kernel(z[0], z1);
    double acc = 0.0;
    for (std::size_t j = 0; j < grid_n; ++j) {
      const Complex z2 = unimodular(h * static_cast<double>(j));
      const Complex den = level_denominator(s, alpha, z1, z2);
      if (std::abs(den) < 1e-14) continue;  // singular node skipped
      const Complex z3 = tridisk_level(s, alpha, z1, z2);
      acc += p1 * poisson_kernel(z[1], z2) * poisson_kernel(z[2], z3) * tridisk_weight(s, alpha, z1, z2);
    }
    rows[i] = acc;
  });
  double total = 0.0;
  for (double r : rows) total += r;
  out.rhs = total / static_cast<double>(grid_n * grid_n);
  out.rel_error = std::abs(out.lhs - out.rhs) / out.lhs;
  return out;
}

}  // namespace rifclark
