#include "rifclark/levelset.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "rifclark/blaschke.hpp"
#include "rifclark/errors.hpp"
#include "rifclark/parallel.hpp"
#include "rifclark/roots.hpp"
#include "rifclark/weight.hpp"
#include "continuation.hpp"

namespace rifclark {

namespace {

// Quadratic extrapolation 3 f1 - 3 f2 + f3 from three consecutive samples
// on one side of node i. Returns false if no side has three usable samples.
template <class Get>
bool one_sided_extrapolate(std::size_t i, std::size_t n, const std::vector<bool>& usable, Get get, double& out) {
  for (int dir : {-1, 1}) {
    std::size_t idx[3];
    bool ok = true;
    for (int k = 1; k <= 3; ++k) {
      const auto j = static_cast<std::size_t>((static_cast<long>(i) + dir * k + 3 * static_cast<long>(n)) %
                                              static_cast<long>(n));
      if (!usable[j]) {
        ok = false;
        break;
      }
      idx[k - 1] = j;
    }
    if (ok) {
      out = get(idx[0], idx[1], idx[2]);
      return true;
    }
  }
  return false;
}

void fill_pending_values(Branch& b, const std::vector<bool>& solved) {
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (solved[i]) continue;
    double angle = 0.0;
    const bool ok = one_sided_extrapolate(i, n, solved, [&](std::size_t a, std::size_t c, std::size_t e) {
      // Unwrap relative to the nearest sample.
      const double a1 = std::arg(b.values[a]);
      const double a2 = a1 + std::arg(b.values[c] / b.values[a]);
      const double a3 = a2 + std::arg(b.values[e] / b.values[c]);
      return 3.0 * a1 - 3.0 * a2 + a3;
    }, angle);
    if (ok) {
      b.values[i] = unimodular(angle);
    } else {
      // Isolated usable samples only: copy the nearest one.
      for (std::size_t k = 1; k < n; ++k) {
        if (solved[(i + k) % n]) {
          b.values[i] = b.values[(i + k) % n];
          break;
        }
        if (solved[(i + n - k) % n]) {
          b.values[i] = b.values[(i + n - k) % n];
          break;
        }
      }
    }
    b.flags[i] |= kSampleExtrapolated;
  }
}

void fill_weights(const Rif& phi, Complex alpha, Branch& b) {
  const std::size_t n = b.size();
  std::vector<bool> usable(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    if (b.flags[i] & (kSampleLineNode | kSampleExtrapolated)) {
      usable[i] = false;
      continue;
    }
    const auto w = weight_at(phi, unimodular(b.theta[i]), b.values[i], alpha);
    if (w.zero_over_zero || !std::isfinite(w.value)) {
      usable[i] = false;
      b.flags[i] |= kSampleZeroOverZero;
    } else {
      b.weights[i] = w.value;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (usable[i]) continue;
    double w = 0.0;
    if (!one_sided_extrapolate(i, n, usable, [&](std::size_t a, std::size_t c, std::size_t e) {
          return 3.0 * b.weights[a] - 3.0 * b.weights[c] + b.weights[e];
        }, w)) {
      throw Error(ErrorCode::ZeroOverZero, "no usable neighbours to extrapolate a branch weight");
    }
    b.weights[i] = std::max(0.0, w);
    b.flags[i] |= kSampleExtrapolated;
  }
}

double angular_gap_to(double theta, const std::vector<double>& centres) {
  double best = std::numeric_limits<double>::infinity();
  for (double c : centres) best = std::min(best, angular_distance(unimodular(theta), unimodular(c)));
  return best;
}

std::vector<Complex> univariate(const PolyMD& p, int var) {
  // p depends on z_{var} only (degree 0 in the other variable).
  std::vector<Complex> point(static_cast<std::size_t>(p.dims()), Complex(1.0));
  return slice_coefficients(p, var, point);
}

}  // namespace

LevelSetTrace trace_level_set(const Rif& phi, Complex alpha, const TraceOptions& options) {
  if (phi.dims() != 2) throw Error(ErrorCode::DimensionMismatch, "level-set tracing needs two variables");
  const std::size_t N = options.grid_n;
  if (N < 256 || (N & (N - 1)) != 0) throw Error(ErrorCode::InvalidArgument, "grid size must be a power of two >= 256");
  if (!is_unimodular(alpha, 1e-9)) throw Error(ErrorCode::InvalidArgument, "alpha is not unimodular");
  const std::size_t n = static_cast<std::size_t>(phi.degree(1));

  LevelSetTrace out;
  const LevelSlicer slicer(phi, alpha);
  const double h = kTwoPi / static_cast<double>(N);

  std::vector<SliceSolution> nodes(N);
  parallel_for(N, [&](std::size_t i) {
    const Complex base[1] = {unimodular(h * static_cast<double>(i))};
    nodes[i] = solve_slice(slicer, std::span<const Complex>(base, 1));
  });

  std::vector<double> centres;
  if (options.refine_near_singularities) {
    out.singularities = find_singularities(phi);
    for (const auto& s : out.singularities) centres.push_back(angle_of(s.z1));
  }

  std::vector<bool> usable(N);
  for (std::size_t i = 0; i < N; ++i) {
    usable[i] = nodes[i].status == SliceStatus::Ok && nodes[i].roots.size() == n;
    if (nodes[i].status == SliceStatus::IdenticallyZero) out.line_nodes.push_back(i);
    else if (nodes[i].roots.size() < n) out.degree_drop_nodes.push_back(i);
  }

  // Start where three nodes on each side are usable, away from singularities.
  std::optional<std::size_t> start;
  for (int pass = 0; pass < 2 && !start; ++pass) {
    for (std::size_t i = 0; i < N; ++i) {
      bool ok = true;
      for (std::size_t k = 0; k <= 6 && ok; ++k) ok = usable[(i + N - 3 + k) % N];
      if (ok && pass == 0 && angular_gap_to(h * static_cast<double>(i), centres) < options.refine_radius) ok = false;
      if (ok) {
        start = i;
        break;
      }
    }
  }
  if (!start) throw Error(ErrorCode::PreconditionFailed, "no usable starting slice on the grid");

  out.branches.resize(n);
  for (auto& b : out.branches) {
    b.alpha = alpha;
    b.theta.resize(N);
    for (std::size_t i = 0; i < N; ++i) b.theta[i] = h * static_cast<double>(i);
    b.values.assign(N, Complex(0.0));
    b.weights.assign(N, 0.0);
    b.flags.assign(N, kSampleSolved);
  }
  for (std::size_t i : out.line_nodes) {
    for (auto& b : out.branches) b.flags[i] |= kSampleLineNode;
  }

  std::vector<Complex> initial = nodes[*start].roots;
  for (auto& r : initial) {
    r = newton_polish(nodes[*start].coefficients, r, options.newton_iterations);
    r /= std::abs(r);
  }
  std::sort(initial.begin(), initial.end(), [](Complex a, Complex b) { return angle_of(a) < angle_of(b); });

  detail::Tracer tracer(slicer, n, options, [](double t) { return std::vector<Complex>{unimodular(t)}; },
                        &out.collisions);
  const double theta_start = h * static_cast<double>(*start);
  tracer.reset(initial, theta_start);
  for (std::size_t j = 0; j < n; ++j) out.branches[j].values[*start] = initial[j];

  std::vector<bool> solved(N, false);
  solved[*start] = true;
  for (std::size_t k = 1; k < N; ++k) {
    const std::size_t i = (*start + k) % N;
    const double theta = theta_start + h * static_cast<double>(k);
    const bool near = angular_gap_to(theta, centres) < options.refine_radius;
    if (tracer.advance(theta, nodes[i], i, near)) {
      solved[i] = true;
      for (std::size_t j = 0; j < n; ++j) out.branches[j].values[i] = tracer.values()[j];
    }
  }
  // Close the loop: continue onto the start node once more.
  {
    const double theta = theta_start + kTwoPi;
    const bool near = angular_gap_to(theta, centres) < options.refine_radius;
    tracer.advance(theta, nodes[*start], *start, near);
    const detail::Match closing = detail::best_match(tracer.values(), initial);
    bool identity = true;
    for (std::size_t j = 0; j < n; ++j) {
      identity = identity && closing.perm[j] == j;
      out.closure_error = std::max(out.closure_error, std::abs(tracer.values()[j] - initial[closing.perm[j]]));
    }
    if (!identity) {
      for (auto& b : out.branches) b.jump_index = *start;
    }
  }

  for (auto& b : out.branches) {
    fill_pending_values(b, solved);
    fill_weights(phi, alpha, b);
  }
  return out;
}

std::vector<Branch> trace_branches(const Rif& phi, Complex alpha, std::size_t grid_n) {
  TraceOptions options;
  options.grid_n = grid_n;
  return trace_level_set(phi, alpha, options).branches;
}

std::vector<LineComponent> detect_lines(const Rif& phi, Complex alpha) {
  if (phi.dims() != 2) throw Error(ErrorCode::DimensionMismatch, "line detection needs two variables");
  if (!is_unimodular(alpha, 1e-9)) throw Error(ErrorCode::InvalidArgument, "alpha is not unimodular");
  const PolyMD level = phi.level_polynomial(alpha);
  const double scale = level.max_abs_coeff();
  if (scale == 0.0) throw Error(ErrorCode::InvalidArgument, "phi is identically alpha");

  std::vector<LineComponent> lines;
  for (int axis = 1; axis <= 2; ++axis) {
    const int var = axis - 1;
    // Coefficients of the level polynomial in the free variable, as
    // polynomials in the frozen one.
    std::vector<std::vector<Complex>> coeff;
    for (const auto& c : coefficient_polynomials(level, 1 - var)) coeff.push_back(univariate(c, var));

    std::size_t pick = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
      double m = 0.0;
      for (const auto& c : coeff[k]) m = std::max(m, std::abs(c));
      if (m > best) {
        best = m;
        pick = k;
      }
    }
    std::vector<Complex> chosen = coeff[pick];
    trim_leading(chosen, 1e-13);
    if (chosen.size() <= 1) continue;  // nonzero constant coefficient: no common zero

    auto residual = [&](Complex tau) {
      double r = 0.0;
      for (const auto& c : coeff) r = std::max(r, std::abs(horner(c, tau).value));
      return r;
    };

    std::vector<Complex> found;
    for (Complex cand : polynomial_roots(chosen)) {
      if (!is_unimodular(cand, kUnimodularTol)) continue;
      double theta = std::arg(cand);
      // Gauss-Newton in the angle on all coefficient polynomials.
      for (int it = 0; it < 8; ++it) {
        const Complex z = unimodular(theta);
        Complex num = 0.0;
        double den = 0.0;
        for (const auto& c : coeff) {
          const auto hv = horner(c, z);
          const Complex jac = Complex(0.0, 1.0) * z * hv.derivative;
          num += std::conj(jac) * hv.value;
          den += std::norm(jac);
        }
        if (den == 0.0) break;
        const double delta = num.real() / den;
        theta -= delta;
        if (std::abs(delta) < 1e-16) break;
      }
      const Complex tau = unimodular(theta);
      if (residual(tau) >= kZeroSliceTol * scale) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](Complex f) { return angular_distance(f, tau) < 1e-7; });
      if (!dup) found.push_back(tau);
    }
    std::sort(found.begin(), found.end(), [](Complex a, Complex b) { return angle_of(a) < angle_of(b); });
    for (Complex tau : found) lines.push_back({axis, tau, line_constant(phi, axis, tau, alpha)});
  }
  return lines;
}

AlphaClass classify_alpha(const Rif& phi, Complex alpha) {
  AlphaClass c;
  c.lines = detect_lines(phi, alpha);
  c.kind = c.lines.empty() ? AlphaClass::Kind::Generic : AlphaClass::Kind::Exceptional;
  return c;
}

std::vector<TorusPoint> find_singularities(const Rif& phi, std::size_t scan_grid) {
  if (phi.dims() != 2) throw Error(ErrorCode::DimensionMismatch, "singularity search needs two variables");
  const PolyMD& p = phi.denominator();
  const double scale = p.max_abs_coeff();

  auto roots_at = [&](double theta) {
    const Complex pt[2] = {unimodular(theta), 0.0};
    auto c = slice_coefficients(p, 1, std::span<const Complex>(pt, 2));
    trim_leading(c, 1e-13);
    return c.size() > 1 ? polynomial_roots(c) : std::vector<Complex>{};
  };
  // Root of p(e^{i theta}, .) closest to the circle.
  auto closest = [&](double theta, Complex& root) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : roots_at(theta)) {
      const double d = std::abs(std::abs(r) - 1.0);
      if (d < best) {
        best = d;
        root = r;
      }
    }
    return best;
  };
  // d|r|/d theta along that root, by implicit differentiation.
  auto slope = [&](double theta) {
    Complex r;
    if (!std::isfinite(closest(theta, r))) return std::numeric_limits<double>::quiet_NaN();
    const Complex z1 = unimodular(theta);
    const Complex pt[2] = {z1, r};
    const std::span<const Complex> s(pt, 2);
    const Complex d2 = eval_partial(p, 1, s);
    if (std::abs(d2) < 1e-10 * scale) return std::numeric_limits<double>::quiet_NaN();
    const Complex dr = -Complex(0.0, 1.0) * z1 * eval_partial(p, 0, s) / d2;
    return (std::conj(r) * dr).real() / std::abs(r);
  };

  const std::size_t M = scan_grid;
  const double h = kTwoPi / static_cast<double>(M);
  std::vector<double> dist(M);
  parallel_for(M, [&](std::size_t i) {
    Complex r;
    dist[i] = closest(h * static_cast<double>(i), r);
  });

  std::vector<TorusPoint> out;
  for (std::size_t i = 0; i < M; ++i) {
    const double prev = dist[(i + M - 1) % M];
    const double next = dist[(i + 1) % M];
    if (!(dist[i] <= prev && dist[i] <= next && dist[i] < 0.05)) continue;
    double a = h * (static_cast<double>(i) - 1.0);
    double b = h * (static_cast<double>(i) + 1.0);
    double theta;
    const double sa = slope(a), sb = slope(b);
    if (sa < 0.0 && sb > 0.0) {
      for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        const double m = 0.5 * (a + b);
        const double sm = slope(m);
        if (std::isnan(sm)) break;
        (sm < 0.0 ? a : b) = m;
      }
      theta = 0.5 * (a + b);
    } else {
      // Golden-section search on the distance itself.
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      Complex r;
      double x1 = b - g * (b - a), x2 = a + g * (b - a);
      double f1 = closest(x1, r), f2 = closest(x2, r);
      for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        if (f1 < f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - g * (b - a);
          f1 = closest(x1, r);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + g * (b - a);
          f2 = closest(x2, r);
        }
      }
      theta = 0.5 * (a + b);
    }
    const Complex tau = unimodular(theta);
    for (const auto& r : roots_at(theta)) {
      if (!is_unimodular(r, 1e-6)) continue;
      const Complex gamma = r / std::abs(r);
      const Complex pt[2] = {tau, gamma};
      if (std::abs(eval(p, std::span<const Complex>(pt, 2))) > 1e-8 * scale) continue;
      const bool dup = std::any_of(out.begin(), out.end(), [&](const TorusPoint& s) {
        return angular_distance(s.z1, tau) < 1e-7 && angular_distance(s.z2, gamma) < 1e-7;
      });
      if (!dup) out.push_back({tau, gamma});
    }
  }
  std::sort(out.begin(), out.end(), [](const TorusPoint& x, const TorusPoint& y) {
    const double ax = angle_of(x.z1), ay = angle_of(y.z1);
    if (std::abs(ax - ay) > 1e-9) return ax < ay;
    return angle_of(x.z2) < angle_of(y.z2);
  });
  return out;
}

double max_level_residual(const Rif& phi, const std::vector<Branch>& branches) {
  double worst = 0.0;
  for (const auto& b : branches) {
    if (b.size() == 0) continue;
    const PolyMD level = phi.level_polynomial(b.alpha);
    const double scale = level.max_abs_coeff();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const Complex pt[2] = {unimodular(b.theta[i]), b.values[i]};
      worst = std::max(worst, std::abs(eval(level, std::span<const Complex>(pt, 2))) / scale);
    }
  }
  return worst;
}

}  // namespace rifclark
