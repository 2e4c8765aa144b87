#pragma once

#include <span>
#include <vector>

#include "rifclark/levelset.hpp"
#include "rifclark/rif.hpp"
#include "rifclark/types.hpp"

namespace rifclark {

/// Log-log fit of the Clark weight along one branch as it enters a
/// singularity: W(zeta) ~ |zeta - tau|^K.
struct VanishOrderFit {
  double order = 0.0;
  double r_squared = 0.0;
  /// min and max of W / |zeta - tau|^K over the fit range.
  double c_lower = 0.0;
  double c_upper = 0.0;
  /// |zeta - tau| and W at the fit nodes, both sides.
  std::vector<double> distances;
  std::vector<double> weights;
};

/// Fit over zeta = tau e^{+-i delta}, delta = 2^-k for k = 6..16. Branch
/// values at the fit nodes come from continuation off the traced grid with
/// Newton polishing. Throws FitDegenerate when R^2 < 0.999 and
/// PreconditionFailed unless (tau, gamma) is a zero of p that the branch
/// passes through.
VanishOrderFit weight_vanish_order(const Rif& phi, Complex alpha, const std::vector<Branch>& branches,
                                   std::size_t branch, const TorusPoint& singularity);
VanishOrderFit weight_vanish_order(const Rif& phi, Complex alpha, std::size_t branch, const TorusPoint& singularity,
                                   std::size_t grid_n = 4096);

struct ContactOrderFit {
  /// Largest fitted vanishing order of g_j^{alpha1} - g_k^{alpha2}.
  double raw_order = 0.0;
  /// raw_order rounded to the nearest even integer.
  int order = 0;
  double r_squared = 0.0;
  /// Pairs (j, k) of branches through the singularity that entered the fit.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

ContactOrderFit branch_contact_order(const Rif& phi, const TorusPoint& singularity, Complex alpha1, Complex alpha2,
                                     std::size_t grid_n = 4096);

struct NontangentialValue {
  Complex value;
  /// Smallest difference between successive Richardson entries.
  double error_estimate = 0.0;
};

/// Radial limit of phi at a torus point, by Richardson extrapolation of
/// phi((1 - 2^-k) point) for k = 4..20. Throws NonConvergent unless the
/// estimate is below 1e-6 and the limit is unimodular within 1e-6.
NontangentialValue nontangential_value(const Rif& phi, std::span<const Complex> point);

struct SingularityReport {
  TorusPoint location;
  Complex nontangential_value;
  struct Entry {
    Complex alpha;
    std::size_t branch = 0;
    VanishOrderFit fit;
  };
  std::vector<Entry> branch_orders;
  /// Alphas at which some branch through the point gave a degenerate fit.
  std::vector<Complex> flagged_alphas;
};

/// Nontangential value plus the weight vanishing order of every branch
/// through the singularity, for each alpha.
SingularityReport analyze_singularity(const Rif& phi, const TorusPoint& singularity, std::span<const Complex> alphas,
                                      std::size_t grid_n = 4096);

}  // namespace rifclark
