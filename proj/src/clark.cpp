#include "rifclark/clark.hpp"

#include <algorithm>
#include <sstream>

#include "rifclark/errors.hpp"
#include "rifclark/parallel.hpp"

namespace rifclark {

ClarkMeasure build_measure(const Rif& phi, Complex alpha, std::size_t grid_n) {
  TraceOptions options;
  options.grid_n = grid_n;
  return build_measure(phi, alpha, options);
}

ClarkMeasure build_measure(const Rif& phi, Complex alpha, const TraceOptions& options) {
  const AlphaClass cls = classify_alpha(phi, alpha);
  LevelSetTrace trace = trace_level_set(phi, alpha, options);
  ClarkMeasure mu;
  mu.alpha = alpha;
  mu.grid_n = options.grid_n;
  mu.kind = cls.kind;
  mu.branches = std::move(trace.branches);
  for (const auto& line : cls.lines) {
    if (line.axis == 1) mu.lines.push_back(line);
  }
  mu.collisions = std::move(trace.collisions);
  mu.singularities = std::move(trace.singularities);
  return mu;
}

double total_mass(const ClarkMeasure& mu) {
  return integrate(mu, [](Complex, Complex) { return 1.0; }).real();
}

double PoissonResidualReport::max_rel_error() const {
  return rel_errors.empty() ? 0.0 : *std::max_element(rel_errors.begin(), rel_errors.end());
}

PoissonResidualReport verify_poisson(const ClarkMeasure& mu, const Rif& phi, std::span<const BidiskPoint> points) {
  PoissonResidualReport report;
  const std::size_t m = points.size();
  report.test_points.assign(points.begin(), points.end());
  report.lhs.resize(m);
  report.rhs.resize(m);
  report.rel_errors.resize(m);
  for (const auto& z : points) {
    if (std::abs(z[0]) >= 1.0 || std::abs(z[1]) >= 1.0) {
      throw Error(ErrorCode::PreconditionFailed, "Poisson test point is not in the open bidisk");
    }
    if (std::abs(phi(z[0], z[1]) - mu.alpha) <= 1e-6) {
      throw Error(ErrorCode::PreconditionFailed, "phi(z) is too close to alpha at a Poisson test point");
    }
  }
  parallel_for(m, [&](std::size_t i) {
    const Complex z1 = points[i][0], z2 = points[i][1];
    const Complex f = phi(z1, z2);
    const double lhs = (1.0 - std::norm(f)) / std::norm(mu.alpha - f);
    const double rhs = integrate(mu, [&](Complex a, Complex b) {
      return poisson_kernel(z1, a) * poisson_kernel(z2, b);
    }).real();
    report.lhs[i] = lhs;
    report.rhs[i] = rhs;
    report.rel_errors[i] = std::abs(lhs - rhs) / lhs;
  });
  return report;
}

std::vector<Complex> moment_table(const ClarkMeasure& mu, int degree) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "moment degree must be nonnegative");
  const std::size_t d = static_cast<std::size_t>(degree) + 1;
  std::vector<Complex> table(d * d, Complex(0.0));
  std::vector<Complex> a(d), b(d);
  for_each_node(mu, [&](Complex z1, Complex z2, double w) {
    a[0] = b[0] = 1.0;
    for (std::size_t j = 1; j < d; ++j) {
      a[j] = a[j - 1] * std::conj(z1);
      b[j] = b[j - 1] * std::conj(z2);
    }
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) table[j * d + k] += w * a[j] * b[k];
    }
  });
  return table;
}

HerglotzReconstruction::HerglotzReconstruction(int degree, std::vector<Complex> moments)
    : degree_(degree), moments_(std::move(moments)) {
  const auto d = static_cast<std::size_t>(degree) + 1;
  if (degree < 0 || moments_.size() != d * d) throw Error(ErrorCode::DimensionMismatch, "moment table has the wrong size");
}

Complex HerglotzReconstruction::moment(int j, int k) const {
  return moments_.at(static_cast<std::size_t>(j) * (static_cast<std::size_t>(degree_) + 1) + static_cast<std::size_t>(k));
}

Complex HerglotzReconstruction::herglotz(Complex z1, Complex z2) const {
  const auto d = static_cast<std::size_t>(degree_) + 1;
  // Horner in z_2 for each row, then in z_1.
  Complex total = 0.0;
  for (std::size_t jj = d; jj-- > 0;) {
    Complex row = 0.0;
    for (std::size_t kk = d; kk-- > 0;) {
      const Complex c = moments_[jj * d + kk];
      row = row * z2 + ((jj == 0 && kk == 0) ? c : 2.0 * c);
    }
    total = total * z1 + row;
  }
  return total;
}

Complex HerglotzReconstruction::operator()(Complex z1, Complex z2) const {
  const Complex h = herglotz(z1, z2);
  return (h - 1.0) / (h + 1.0);
}

HerglotzReconstruction herglotz_reconstruct(const ClarkMeasure& mu, int degree) {
  const double mass = total_mass(mu);
  if (std::abs(mass - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "measure has mass " << mass << ", expected 1";
    throw Error(ErrorCode::MassNotOne, msg.str());
  }
  return HerglotzReconstruction(degree, moment_table(mu, degree));
}

}  // namespace rifclark
