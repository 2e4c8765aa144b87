#include "rifclark/embedding.hpp"

#include <algorithm>
#include <sstream>

#include "rifclark/errors.hpp"
#include "rifclark/roots.hpp"

namespace rifclark {

Complex szego_kernel(const BidiskPoint& w, Complex z1, Complex z2) {
  return 1.0 / ((1.0 - std::conj(w[0]) * z1) * (1.0 - std::conj(w[1]) * z2));
}

GramReport gram_isometry_check(const Rif& phi, const ClarkMeasure& mu, std::span<const BidiskPoint> points) {
  const auto m = static_cast<Eigen::Index>(points.size());
  for (const auto& w : points) {
    if (std::abs(w[0]) >= 1.0 || std::abs(w[1]) >= 1.0) {
      throw Error(ErrorCode::PreconditionFailed, "kernel point is not in the open bidisk");
    }
  }
  GramReport report;
  report.sample_points.assign(points.begin(), points.end());
  std::vector<Complex> phi_w(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) phi_w[i] = phi(points[i][0], points[i][1]);

  report.gram_model.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& wi = points[static_cast<std::size_t>(i)];
      const auto& wj = points[static_cast<std::size_t>(j)];
      report.gram_model(i, j) = (1.0 - std::conj(phi_w[static_cast<std::size_t>(i)]) * phi_w[static_cast<std::size_t>(j)]) *
                                szego_kernel(wi, wj[0], wj[1]);
    }
  }

  std::vector<Complex> factor(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) factor[i] = 1.0 - mu.alpha * std::conj(phi_w[i]);
  report.gram_embedded = Eigen::MatrixXcd::Zero(m, m);
  Eigen::VectorXcd images(m);
  for_each_node(mu, [&](Complex z1, Complex z2, double weight) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto k = static_cast<std::size_t>(i);
      images(i) = factor[k] * szego_kernel(points[k], z1, z2);
    }
    report.gram_embedded.noalias() += weight * images * images.adjoint();
  });

  report.max_abs_error = (report.gram_model - report.gram_embedded).cwiseAbs().maxCoeff();
  report.max_asymmetry = std::max((report.gram_model - report.gram_model.adjoint()).cwiseAbs().maxCoeff(),
                                  (report.gram_embedded - report.gram_embedded.adjoint()).cwiseAbs().maxCoeff());
  return report;
}

namespace {

/// p = head(z_{other}) + z_{axis} tail(z) where head = p|_{z_axis = 0}.
std::pair<PolyMD, PolyMD> split_first_power(const PolyMD& p, int axis) {
  const auto coeffs = coefficient_polynomials(p, axis);
  PolyMD head = coeffs.front();
  std::vector<int> deg = p.degrees();
  const int n = deg[static_cast<std::size_t>(axis)];
  if (n == 0) return {head, PolyMD::zeros(deg)};
  deg[static_cast<std::size_t>(axis)] = n - 1;
  PolyMD tail = PolyMD::zeros(deg);
  // Tail coefficient of z_axis^k is the coefficient of z_axis^{k+1} in p.
  std::vector<int> e(deg.size(), 0);
  const std::size_t total = tail.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int a = static_cast<int>(deg.size()) - 1; a >= 0; --a) {
      const auto ua = static_cast<std::size_t>(a);
      e[ua] = static_cast<int>(rem % static_cast<std::size_t>(deg[ua] + 1));
      rem /= static_cast<std::size_t>(deg[ua] + 1);
    }
    std::vector<int> src = e;
    src[static_cast<std::size_t>(axis)] += 1;
    tail.coeff(e) = p.coeff(src);
  }
  return {head, tail};
}

void require_zero_free_on_closed_disk(const PolyMD& den, int var) {
  if (den.is_zero()) throw Error(ErrorCode::DenominatorVanishes, "conjugate denominator vanishes identically");
  std::vector<Complex> point(static_cast<std::size_t>(den.dims()), Complex(1.0));
  auto c = slice_coefficients(den, var, point);
  trim_leading(c, 1e-13);
  if (c.size() <= 1) return;
  for (Complex r : polynomial_roots(c)) {
    if (std::abs(r) <= 1.0 + 1e-9) {
      std::ostringstream msg;
      msg << "conjugate denominator has a zero at " << r << " in the closed disk";
      throw Error(ErrorCode::DenominatorVanishes, msg.str());
    }
  }
}

Complex eval2(const PolyMD& p, Complex z1, Complex z2) {
  const Complex z[2] = {z1, z2};
  return eval(p, std::span<const Complex>(z, 2));
}

}  // namespace

Complex ConjRational::r1(Complex z1, Complex z2) const { return eval2(numerator1, z1, z2) / eval2(denominator1, z1, z2); }
Complex ConjRational::r2(Complex z1, Complex z2) const { return eval2(numerator2, z1, z2) / eval2(denominator2, z1, z2); }

ConjRational conj_rational(const Rif& phi, Complex alpha, const std::vector<Branch>& branches) {
  if (phi.dims() != 2) throw Error(ErrorCode::DimensionMismatch, "conjugate representation needs two variables");
  ConjRational out;
  out.alpha = alpha;
  auto build = [&](int axis, PolyMD& num, PolyMD& den) {
    const auto [p1, p2] = split_first_power(phi.denominator(), axis);
    const auto [q1, q2] = split_first_power(phi.numerator(), axis);
    num = linear_combination(alpha, p2, -1.0, q2);
    den = linear_combination(1.0, q1, -alpha, p1);
    require_zero_free_on_closed_disk(den, 1 - axis);
  };
  build(0, out.numerator1, out.denominator1);
  build(1, out.numerator2, out.denominator2);

  for (const auto& b : branches) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      const Complex z1 = unimodular(b.theta[i]);
      const Complex z2 = b.values[i];
      out.max_branch_error = std::max(out.max_branch_error, std::abs(out.r1(z1, z2) - std::conj(z1)));
      out.max_branch_error = std::max(out.max_branch_error, std::abs(out.r2(z1, z2) - std::conj(z2)));
    }
  }
  if (out.max_branch_error > 1e-8) {
    std::ostringstream msg;
    msg << "conjugate representation misses the branch samples by " << out.max_branch_error;
    throw Error(ErrorCode::PreconditionFailed, msg.str());
  }
  return out;
}

const char* to_string(DensityVerdict v) {
  switch (v) {
    case DensityVerdict::ConsistentWithUnitary: return "consistent_with_unitary";
    case DensityVerdict::ConsistentWithNonunitary: return "consistent_with_nonunitary";
    case DensityVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

DensityReport density_distance(const ClarkMeasure& mu, int degree) {
  if (degree < 1) throw Error(ErrorCode::InvalidArgument, "density degree must be at least 1");
  const int D = degree;
  // Moments M(s, t) = int zeta_1^s zeta_2^t dmu for s, t in [-D-1, D].
  const int lo = -D - 1;
  const int width = 2 * D + 2;
  std::vector<Complex> moments(static_cast<std::size_t>(width * width), Complex(0.0));
  std::vector<Complex> pw1(static_cast<std::size_t>(width)), pw2(static_cast<std::size_t>(width));
  auto powers = [&](Complex z, std::vector<Complex>& out) {
    // out[k] = z^{lo + k}; |z| = 1 so negative powers are conjugates.
    Complex acc = std::pow(std::conj(z), -lo);
    for (int k = 0; k < width; ++k) {
      out[static_cast<std::size_t>(k)] = acc;
      acc *= z;
    }
  };
  for_each_node(mu, [&](Complex z1, Complex z2, double w) {
    powers(z1, pw1);
    powers(z2, pw2);
    for (int s = 0; s < width; ++s) {
      for (int t = 0; t < width; ++t) {
        moments[static_cast<std::size_t>(s * width + t)] += w * pw1[static_cast<std::size_t>(s)] * pw2[static_cast<std::size_t>(t)];
      }
    }
  });
  auto M = [&](int s, int t) { return moments[static_cast<std::size_t>((s - lo) * width + (t - lo))]; };

  const int m = (D + 1) * (D + 1);
  Eigen::MatrixXcd G(m, m);
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < m; ++k) G(l, k) = M(k / (D + 1) - l / (D + 1), k % (D + 1) - l % (D + 1));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(G);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double lmax = lambda.maxCoeff();
  Eigen::VectorXd inv(m);
  DensityReport report;
  report.alpha = mu.alpha;
  report.degree = D;
  report.largest_eigenvalue = lmax;
  for (int i = 0; i < m; ++i) {
    if (lambda(i) > 1e-10 * lmax) {
      inv(i) = 1.0 / lambda(i);
    } else {
      inv(i) = 0.0;
      ++report.truncated_eigenvalues;
    }
  }
  const Eigen::MatrixXcd& V = eig.eigenvectors();

  // Target conj(zeta_v); b_l = <target, m_l>.
  auto distance = [&](int var) {
    Eigen::VectorXcd b(m);
    for (int l = 0; l < m; ++l) {
      const int a = l / (D + 1), c = l % (D + 1);
      b(l) = var == 0 ? M(-a - 1, -c) : M(-a, -c - 1);
    }
    const Eigen::VectorXcd coef = V * (inv.asDiagonal() * (V.adjoint() * b));
    double d2 = 0.0;
    for_each_node(mu, [&](Complex z1, Complex z2, double w) {
      Complex approx = 0.0;
      Complex row = 1.0;
      for (int a = 0; a <= D; ++a) {
        Complex col = row;
        for (int c = 0; c <= D; ++c) {
          approx += coef(a * (D + 1) + c) * col;
          col *= z2;
        }
        row *= z1;
      }
      const Complex target = var == 0 ? std::conj(z1) : std::conj(z2);
      d2 += w * std::norm(target - approx);
    });
    return std::sqrt(d2);
  };
  report.distance_zbar1 = distance(0);
  report.distance_zbar2 = distance(1);
  const double d = std::max(report.distance_zbar1, report.distance_zbar2);
  report.verdict = d < 0.05 ? DensityVerdict::ConsistentWithUnitary
                 : d > 0.3  ? DensityVerdict::ConsistentWithNonunitary
                            : DensityVerdict::Inconclusive;
  return report;
}

}  // namespace rifclark
