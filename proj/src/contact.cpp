#include "rifclark/contact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rifclark/blaschke.hpp"
#include "rifclark/errors.hpp"
#include "rifclark/poly.hpp"
#include "rifclark/weight.hpp"
#include "continuation.hpp"

namespace rifclark {

namespace {

constexpr int kFirstLevel = 6;
constexpr int kLastLevel = 16;
constexpr double kMinRSquared = 0.999;

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
  }
  f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return f;
}

void require_singularity(const Rif& phi, const TorusPoint& s) {
  const Complex pt[2] = {s.z1, s.z2};
  const double scale = phi.denominator().max_abs_coeff();
  if (!is_unimodular(s.z1, 1e-9) || !is_unimodular(s.z2, 1e-9) ||
      std::abs(eval(phi.denominator(), std::span<const Complex>(pt, 2))) > 1e-8 * scale) {
    throw Error(ErrorCode::PreconditionFailed, "point is not a boundary singularity of phi");
  }
}

/// Values of every branch at zeta = tau e^{i side delta_k}, k = 6..16,
/// continued from the grid node nearest the first offset.
struct OffsetSamples {
  std::vector<double> distances;               // |zeta - tau|
  std::vector<Complex> zetas;
  std::vector<std::vector<Complex>> values;    // [level][branch]
};

OffsetSamples walk_to_singularity(const Rif& phi, Complex alpha, const std::vector<Branch>& branches, Complex tau,
                                  int side) {
  OffsetSamples out;
  if (branches.empty()) return out;
  const std::size_t N = branches.front().size();
  const std::size_t n = branches.size();
  const double h = kTwoPi / static_cast<double>(N);
  const double theta_tau = angle_of(tau);
  const double first = std::ldexp(1.0, -kFirstLevel);

  // Nearest node at or beyond the first offset whose samples were solved.
  auto node_at = [&](long k) { return static_cast<std::size_t>(((k % static_cast<long>(N)) + static_cast<long>(N)) % static_cast<long>(N)); };
  long k0 = std::lround((theta_tau + side * first) / h);
  for (int guard = 0; guard < 64; ++guard) {
    const std::size_t i = node_at(k0);
    const bool clean = std::all_of(branches.begin(), branches.end(), [&](const Branch& b) { return b.flags[i] == kSampleSolved; });
    if (clean) break;
    k0 += side;
  }
  const std::size_t i0 = node_at(k0);
  const double t0 = h * static_cast<double>(k0);

  const LevelSlicer slicer(phi, alpha);
  TraceOptions options;
  detail::Tracer tracer(slicer, n, options, [](double t) { return std::vector<Complex>{unimodular(t)}; }, nullptr);
  std::vector<Complex> start(n);
  for (std::size_t j = 0; j < n; ++j) start[j] = branches[j].values[i0];
  tracer.reset(start, t0);

  for (int level = kFirstLevel; level <= kLastLevel; ++level) {
    const double t = theta_tau + side * std::ldexp(1.0, -level);
    if (!tracer.advance(t, true)) {
      throw Error(ErrorCode::PreconditionFailed, "slice degenerates while approaching the singularity");
    }
    const Complex zeta = unimodular(t);
    out.zetas.push_back(zeta);
    out.distances.push_back(std::abs(zeta - tau));
    out.values.push_back(tracer.values());
  }
  return out;
}

bool branch_passes(const Branch& b, const TorusPoint& s) {
  const std::size_t N = b.size();
  const double h = kTwoPi / static_cast<double>(N);
  const long k = std::lround(angle_of(s.z1) / h);
  double best = std::numeric_limits<double>::infinity();
  for (long d = -3; d <= 3; ++d) {
    const auto i = static_cast<std::size_t>(((k + d) % static_cast<long>(N) + static_cast<long>(N)) % static_cast<long>(N));
    best = std::min(best, std::abs(b.values[i] - s.z2));
  }
  return best < 0.05;
}

}  // namespace

VanishOrderFit weight_vanish_order(const Rif& phi, Complex alpha, const std::vector<Branch>& branches,
                                   std::size_t branch, const TorusPoint& singularity) {
  if (phi.dims() != 2) throw Error(ErrorCode::DimensionMismatch, "contact analysis needs two variables");
  require_singularity(phi, singularity);
  if (branch >= branches.size()) throw Error(ErrorCode::InvalidArgument, "branch index out of range");
  if (!branch_passes(branches[branch], singularity)) {
    throw Error(ErrorCode::PreconditionFailed, "branch does not pass through the singularity");
  }
  VanishOrderFit fit;
  std::vector<double> x, y;
  for (int side : {-1, 1}) {
    const OffsetSamples s = walk_to_singularity(phi, alpha, branches, singularity.z1, side);
    for (std::size_t k = 0; k < s.zetas.size(); ++k) {
      const WeightSample w = weight_at(phi, s.zetas[k], s.values[k][branch], alpha);
      if (w.zero_over_zero || !(w.value > 0.0) || !std::isfinite(w.value)) {
        throw Error(ErrorCode::FitDegenerate, "weight is not positive and finite near the singularity");
      }
      fit.distances.push_back(s.distances[k]);
      fit.weights.push_back(w.value);
      x.push_back(std::log(s.distances[k]));
      y.push_back(std::log(w.value));
    }
  }
  const LineFit lf = least_squares(x, y);
  fit.order = lf.slope;
  fit.r_squared = lf.r_squared;
  if (lf.r_squared < kMinRSquared) {
    std::ostringstream msg;
    msg << "log-log fit of the weight has R^2 = " << lf.r_squared;
    throw Error(ErrorCode::FitDegenerate, msg.str());
  }
  fit.c_lower = std::numeric_limits<double>::infinity();
  fit.c_upper = 0.0;
  for (std::size_t i = 0; i < fit.weights.size(); ++i) {
    const double r = fit.weights[i] / std::pow(fit.distances[i], fit.order);
    fit.c_lower = std::min(fit.c_lower, r);
    fit.c_upper = std::max(fit.c_upper, r);
  }
  return fit;
}

VanishOrderFit weight_vanish_order(const Rif& phi, Complex alpha, std::size_t branch, const TorusPoint& singularity,
                                   std::size_t grid_n) {
  TraceOptions options;
  options.grid_n = grid_n;
  const auto trace = trace_level_set(phi, alpha, options);
  return weight_vanish_order(phi, alpha, trace.branches, branch, singularity);
}

ContactOrderFit branch_contact_order(const Rif& phi, const TorusPoint& singularity, Complex alpha1, Complex alpha2,
                                     std::size_t grid_n) {
  if (phi.dims() != 2) throw Error(ErrorCode::DimensionMismatch, "contact analysis needs two variables");
  if (angular_distance(alpha1, alpha2) < 1e-9) throw Error(ErrorCode::InvalidArgument, "alpha1 and alpha2 coincide");
  require_singularity(phi, singularity);

  TraceOptions options;
  options.grid_n = grid_n;
  struct Side {
    OffsetSamples samples;
    std::vector<std::size_t> through;  // branches ending at gamma
  };
  auto collect = [&](Complex alpha) {
    const auto trace = trace_level_set(phi, alpha, options);
    std::vector<Side> sides;
    for (int side : {-1, 1}) {
      Side s;
      s.samples = walk_to_singularity(phi, alpha, trace.branches, singularity.z1, side);
      for (std::size_t j = 0; j < trace.branches.size(); ++j) {
        if (std::abs(s.samples.values.back()[j] - singularity.z2) < 1e-3) s.through.push_back(j);
      }
      sides.push_back(std::move(s));
    }
    return sides;
  };
  const auto a = collect(alpha1);
  const auto b = collect(alpha2);
  if (a[0].through.empty() || b[0].through.empty() || a[1].through.empty() || b[1].through.empty()) {
    throw Error(ErrorCode::PreconditionFailed, "no branches meet the point");
  }

  ContactOrderFit out;
  out.raw_order = -std::numeric_limits<double>::infinity();
  bool degenerate_only = true;
  double worst_r2 = 1.0;
  for (std::size_t j : a[0].through) {
    for (std::size_t k : b[0].through) {
      // The same labels are expected on both sides; pairs missing on one
      // side are skipped.
      if (std::find(a[1].through.begin(), a[1].through.end(), j) == a[1].through.end()) continue;
      if (std::find(b[1].through.begin(), b[1].through.end(), k) == b[1].through.end()) continue;
      std::vector<double> x, y;
      for (int s = 0; s < 2; ++s) {
        for (std::size_t l = 0; l < a[s].samples.distances.size(); ++l) {
          const double diff = std::abs(a[s].samples.values[l][j] - b[s].samples.values[l][k]);
          if (!(diff > 0.0)) continue;
          x.push_back(std::log(a[s].samples.distances[l]));
          y.push_back(std::log(diff));
        }
      }
      if (x.size() < 4) continue;
      const LineFit lf = least_squares(x, y);
      worst_r2 = std::min(worst_r2, lf.r_squared);
      if (lf.r_squared < kMinRSquared) continue;
      degenerate_only = false;
      out.pairs.emplace_back(j, k);
      if (lf.slope > out.raw_order) {
        out.raw_order = lf.slope;
        out.r_squared = lf.r_squared;
      }
    }
  }
  if (degenerate_only) {
    std::ostringstream msg;
    msg << "no branch pair gave a clean log-log fit (worst R^2 = " << worst_r2 << ")";
    throw Error(ErrorCode::FitDegenerate, msg.str());
  }
  out.order = 2 * static_cast<int>(std::lround(out.raw_order / 2.0));
  return out;
}

NontangentialValue nontangential_value(const Rif& phi, std::span<const Complex> point) {
  if (static_cast<int>(point.size()) != phi.dims()) throw Error(ErrorCode::DimensionMismatch, "point has the wrong dimension");
  for (Complex z : point) {
    if (!is_unimodular(z, 1e-9)) throw Error(ErrorCode::InvalidArgument, "point is not on the torus");
  }
  constexpr int kFirst = 4, kLast = 20;
  const int rows = kLast - kFirst + 1;
  std::vector<std::vector<Complex>> table(static_cast<std::size_t>(rows));
  std::vector<Complex> z(point.size());
  for (int r = 0; r < rows; ++r) {
    const double h = std::ldexp(1.0, -(kFirst + r));
    for (std::size_t i = 0; i < point.size(); ++i) z[i] = (1.0 - h) * point[i];
    auto& row = table[static_cast<std::size_t>(r)];
    row.push_back(phi(z));
    for (int c = 1; c <= r; ++c) {
      const double f = std::ldexp(1.0, c);
      const auto& prev = table[static_cast<std::size_t>(r - 1)];
      row.push_back((f * row[static_cast<std::size_t>(c - 1)] - prev[static_cast<std::size_t>(c - 1)]) / (f - 1.0));
    }
  }
  NontangentialValue best{table[0][0], std::numeric_limits<double>::infinity()};
  for (int r = 1; r < rows; ++r) {
    const auto& row = table[static_cast<std::size_t>(r)];
    const auto& prev = table[static_cast<std::size_t>(r - 1)];
    for (int c = 0; c < r; ++c) {
      const double d = std::abs(row[static_cast<std::size_t>(c)] - prev[static_cast<std::size_t>(c)]);
      if (d < best.error_estimate) best = {row[static_cast<std::size_t>(c)], d};
    }
  }
  if (best.error_estimate > 1e-6 || !is_unimodular(best.value, 1e-6)) {
    std::ostringstream msg;
    msg << "radial limit did not settle (estimate " << best.error_estimate << ", |value| = " << std::abs(best.value) << ")";
    throw Error(ErrorCode::NonConvergent, msg.str());
  }
  return best;
}

SingularityReport analyze_singularity(const Rif& phi, const TorusPoint& singularity, std::span<const Complex> alphas,
                                      std::size_t grid_n) {
  SingularityReport report;
  report.location = singularity;
  const Complex pt[2] = {singularity.z1, singularity.z2};
  report.nontangential_value = nontangential_value(phi, std::span<const Complex>(pt, 2)).value;
  TraceOptions options;
  options.grid_n = grid_n;
  for (Complex alpha : alphas) {
    const auto trace = trace_level_set(phi, alpha, options);
    bool flagged = false;
    for (std::size_t j = 0; j < trace.branches.size(); ++j) {
      if (!branch_passes(trace.branches[j], singularity)) continue;
      try {
        report.branch_orders.push_back({alpha, j, weight_vanish_order(phi, alpha, trace.branches, j, singularity)});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::FitDegenerate) throw;
        flagged = true;
      }
    }
    if (flagged) report.flagged_alphas.push_back(alpha);
  }
  return report;
}

}  // namespace rifclark
