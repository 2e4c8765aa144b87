#pragma once

#include <span>
#include <vector>

#include "rifclark/rif.hpp"

namespace rifclark {

/// Roots of |r| - 1 within this count as unimodular.
inline constexpr double kUnimodularTol = 1e-6;
/// A slice whose coefficients all fall below this fraction of the level
/// polynomial's largest coefficient vanishes identically.
inline constexpr double kZeroSliceTol = 1e-10;

/// Univariate slices of the level polynomial p~ - alpha p in the last
/// variable. Holds the level polynomial so repeated slicing along a grid does
/// not rebuild it.
class LevelSlicer {
 public:
  LevelSlicer(const Rif& phi, Complex alpha);

  const Rif& rif() const { return *phi_; }
  Complex alpha() const { return alpha_; }
  const PolyMD& level() const { return level_; }
  /// max |coefficient| of p~ - alpha p.
  double scale() const { return scale_; }
  int last_axis() const { return level_.dims() - 1; }

  /// Ascending coefficients in z_d with z' = base fixed.
  std::vector<Complex> coefficients(std::span<const Complex> base) const;

 private:
  const Rif* phi_;
  Complex alpha_;
  PolyMD level_;
  double scale_;
};

enum class SliceStatus { Ok, IdenticallyZero };

struct SliceSolution {
  SliceStatus status = SliceStatus::Ok;
  std::vector<Complex> coefficients;  // trimmed
  std::vector<Complex> roots;
  /// Leading coefficient vanished: fewer than n_d roots.
  bool degree_drop = false;
};

/// Non-throwing slice solve used by the tracers.
SliceSolution solve_slice(const LevelSlicer& slicer, std::span<const Complex> base);

struct SliceRoots {
  std::vector<Complex> base_point;
  Complex alpha;
  std::vector<Complex> roots;
  std::vector<bool> unimodular_flags;
  bool degree_drop = false;
};

/// All roots of p~(z', .) - alpha p(z', .). Generically n_d roots, all on the
/// circle. Throws IdenticallyZeroSlice when z' lies on a line component.
SliceRoots slice_roots(const Rif& phi, std::span<const Complex> base, Complex alpha);

struct ClarkAtom {
  Complex point;
  double mass = 0.0;
  /// p(z', point) vanishes: the atom sits on a boundary singularity.
  bool singular = false;
};

/// Clark measure of the one-variable Blaschke product phi(z', .) at alpha:
/// atoms at the unimodular roots with mass 1/|d phi/d z_d|.
std::vector<ClarkAtom> slice_clark_atoms(const Rif& phi, std::span<const Complex> base, Complex alpha);

/// (1 - |phi(z',0)|^2) / |alpha - phi(z',0)|^2, the total mass of the slice
/// Clark measure.
double slice_expected_mass(const Rif& phi, std::span<const Complex> base, Complex alpha);

}  // namespace rifclark
