#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rifclark/clark.hpp"
#include "rifclark/poly.hpp"
#include "rifclark/rif.hpp"

namespace rifclark {

/// Szego kernel of the bidisk, C_w(z) = 1 / ((1 - conj(w_1) z_1)(1 - conj(w_2) z_2)).
Complex szego_kernel(const BidiskPoint& w, Complex z1, Complex z2);

struct GramReport {
  std::vector<BidiskPoint> sample_points;
  /// <K_{w_i}, K_{w_j}> in the model space.
  Eigen::MatrixXcd gram_model;
  /// L^2(sigma_alpha) inner products of the embedded kernels.
  Eigen::MatrixXcd gram_embedded;
  double max_abs_error = 0.0;
  /// max |G - G^*| over both matrices.
  double max_asymmetry = 0.0;
};

/// Compares model-space kernel inner products with those of their images
/// J_alpha[K_w] = (1 - alpha conj(phi(w))) C_w in L^2(mu).
GramReport gram_isometry_check(const Rif& phi, const ClarkMeasure& mu, std::span<const BidiskPoint> points);

/// Boundary representation of conj(zeta_1) and conj(zeta_2) on the level set
/// by rational functions R_k = numerator_k / denominator_k, where each
/// denominator depends on the other variable only and has no zeros on the
/// closed disk.
struct ConjRational {
  Complex alpha;
  PolyMD numerator1 = PolyMD::zeros({0, 0});
  PolyMD denominator1 = PolyMD::zeros({0, 0});
  PolyMD numerator2 = PolyMD::zeros({0, 0});
  PolyMD denominator2 = PolyMD::zeros({0, 0});
  /// max over branch samples of |R_k(zeta) - conj(zeta_k)|, k = 1, 2.
  double max_branch_error = 0.0;

  Complex r1(Complex z1, Complex z2) const;
  Complex r2(Complex z1, Complex z2) const;
};

/// Splits p = p_1(z_2) + z_1 p_2(z) and p~ = q_1(z_2) + z_1 q_2(z), so that
/// R_1 = (alpha p_2 - q_2) / (q_1 - alpha p_1), and symmetrically for R_2.
/// Throws DenominatorVanishes when a denominator has a zero in the closed
/// disk, and PreconditionFailed when a branch sample misses by more than
/// 1e-8.
ConjRational conj_rational(const Rif& phi, Complex alpha, const std::vector<Branch>& branches);

enum class DensityVerdict { ConsistentWithUnitary, ConsistentWithNonunitary, Inconclusive };
const char* to_string(DensityVerdict v);

struct DensityReport {
  Complex alpha;
  int degree = 0;
  /// L^2(mu) distance from conj(zeta_2), resp. conj(zeta_1), to the span of
  /// zeta_1^a zeta_2^b with 0 <= a, b <= degree.
  double distance_zbar2 = 0.0;
  double distance_zbar1 = 0.0;
  DensityVerdict verdict = DensityVerdict::Inconclusive;
  /// Eigenvalues of the monomial Gram matrix dropped by the pseudoinverse.
  int truncated_eigenvalues = 0;
  double largest_eigenvalue = 0.0;
};

/// Least-squares projection with a truncated spectral pseudoinverse (cutoff
/// 1e-10 of the largest eigenvalue). Verdict from the larger distance:
/// < 0.05 unitary, > 0.3 nonunitary, inconclusive between.
DensityReport density_distance(const ClarkMeasure& mu, int degree);

}  // namespace rifclark
