#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rifclark/types.hpp"

namespace rifclark {

/// Relative tolerance below which a coefficient counts as zero.
inline constexpr double kCoeffTol = 1e-14;

/// Dense multivariate complex polynomial.
///
/// Coefficients are stored row-major over the exponent box
/// (n_1+1) x ... x (n_d+1), last variable fastest. Variables are indexed
/// from 0 in the API (axis 0 is z_1).
class PolyMD {
 public:
  /// Checks the shape and that every declared degree is attained.
  PolyMD(std::vector<int> degrees, std::vector<Complex> coeffs);

  /// Shape check only. Used when a polynomial is embedded in a larger
  /// exponent box, e.g. the denominator 1 of z_1 z_2 seen at bidegree (1,1).
  static PolyMD with_shape(std::vector<int> degrees, std::vector<Complex> coeffs);

  static PolyMD zeros(std::vector<int> degrees);

  int dims() const { return static_cast<int>(degrees_.size()); }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(int axis) const { return degrees_.at(static_cast<std::size_t>(axis)); }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> mutable_coeffs() { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

  Complex coeff(std::span<const int> exponent) const;
  Complex& coeff(std::span<const int> exponent);

  double max_abs_coeff() const;
  bool is_zero() const;
  /// Some coefficient with exponent n_axis in variable `axis` exceeds the
  /// relative tolerance.
  bool attains_degree(int axis) const;
  bool attains_degrees() const;

 private:
  PolyMD(std::vector<int> degrees, std::vector<Complex> coeffs, bool check_attained);

  std::vector<int> degrees_;
  std::vector<Complex> coeffs_;
  std::vector<std::size_t> strides_;
};

Complex eval(const PolyMD& p, std::span<const Complex> z);

/// Value of dp/dz_{axis} at z.
Complex eval_partial(const PolyMD& p, int axis, std::span<const Complex> z);

/// z^n conj(p(1/conj(z))): coefficient box reversed in every axis and conjugated.
PolyMD reflect(const PolyMD& p);

/// a*p + b*q for polynomials of identical shape.
PolyMD linear_combination(Complex a, const PolyMD& p, Complex b, const PolyMD& q);

/// Same polynomial in a larger exponent box.
PolyMD pad_to(const PolyMD& p, const std::vector<int>& degrees);

/// Coefficients (ascending) of the univariate polynomial obtained by fixing
/// every variable except `axis` to the corresponding entry of `point`.
/// `point` has length dims(); point[axis] is ignored.
std::vector<Complex> slice_coefficients(const PolyMD& p, int axis, std::span<const Complex> point);

/// Coefficients (ascending, in z_{axis}) as polynomials in the remaining
/// variables, each embedded in the full box with degree 0 in `axis`.
std::vector<PolyMD> coefficient_polynomials(const PolyMD& p, int axis);

enum class StabilityMethod { GridSliceRoots };

struct StabilityCertificate {
  bool is_stable = false;
  /// Smallest modulus of any slice root found on the grid (0 when a slice
  /// vanished identically).
  double min_modulus_on_grid = 0.0;
  int grid_resolution = 0;
  StabilityMethod method = StabilityMethod::GridSliceRoots;
  /// Grid point (all d coordinates) where the minimum was attained.
  std::vector<Complex> worst_point;
};

/// Heuristic certificate that p has no zeros in the open polydisk.
///
/// For each distinguished variable, the remaining variables run over the
/// product grid {r e^{i t}} with `grid_n` radii in [0,1] and 4*grid_n angles;
/// the univariate slice is solved and a root of modulus < 1 - 1e-9 marks p
/// unstable. Tuple count grows like (4 grid_n^2)^(d-1), so d = 3 callers
/// should pass a small grid_n.
StabilityCertificate stability_check(const PolyMD& p, int grid_n = 64);

}  // namespace rifclark
