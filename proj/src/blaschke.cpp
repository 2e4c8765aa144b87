#include "rifclark/blaschke.hpp"

#include <algorithm>
#include <sstream>

#include "rifclark/errors.hpp"
#include "rifclark/roots.hpp"
#include "rifclark/weight.hpp"

namespace rifclark {

namespace {

void check_unimodular(std::span<const Complex> base, Complex alpha) {
  for (const auto& z : base) {
    if (!is_unimodular(z, 1e-9)) throw Error(ErrorCode::InvalidArgument, "base point is not on the torus");
  }
  if (!is_unimodular(alpha, 1e-9)) throw Error(ErrorCode::InvalidArgument, "alpha is not unimodular");
}

std::vector<Complex> full_point(std::span<const Complex> base, Complex last) {
  std::vector<Complex> z(base.begin(), base.end());
  z.push_back(last);
  return z;
}

}  // namespace

LevelSlicer::LevelSlicer(const Rif& phi, Complex alpha)
    : phi_(&phi), alpha_(alpha), level_(phi.level_polynomial(alpha)), scale_(level_.max_abs_coeff()) {
  if (scale_ == 0.0) throw Error(ErrorCode::InvalidArgument, "phi is identically alpha");
}

std::vector<Complex> LevelSlicer::coefficients(std::span<const Complex> base) const {
  if (static_cast<int>(base.size()) != level_.dims() - 1) {
    throw Error(ErrorCode::DimensionMismatch, "base point must have d-1 coordinates");
  }
  return slice_coefficients(level_, last_axis(), full_point(base, 0.0));
}

SliceSolution solve_slice(const LevelSlicer& slicer, std::span<const Complex> base) {
  SliceSolution out;
  out.coefficients = slicer.coefficients(base);
  double slice_scale = 0.0;
  for (const auto& c : out.coefficients) slice_scale = std::max(slice_scale, std::abs(c));
  if (slice_scale < kZeroSliceTol * slicer.scale()) {
    out.status = SliceStatus::IdenticallyZero;
    return out;
  }
  const std::size_t full = out.coefficients.size();
  trim_leading(out.coefficients, 1e-13);
  out.degree_drop = out.coefficients.size() < full;
  if (out.coefficients.size() > 1) {
    out.roots = polynomial_roots(out.coefficients);
    for (auto& r : out.roots) r = newton_polish(out.coefficients, r, 2);
  }
  return out;
}

SliceRoots slice_roots(const Rif& phi, std::span<const Complex> base, Complex alpha) {
  check_unimodular(base, alpha);
  const LevelSlicer slicer(phi, alpha);
  auto sol = solve_slice(slicer, base);
  if (sol.status == SliceStatus::IdenticallyZero) {
    std::ostringstream msg;
    msg << "phi is identically " << alpha << " on the slice through (";
    for (std::size_t i = 0; i < base.size(); ++i) msg << (i ? ", " : "") << base[i];
    msg << ")";
    throw Error(ErrorCode::IdenticallyZeroSlice, msg.str());
  }
  SliceRoots out;
  out.base_point.assign(base.begin(), base.end());
  out.alpha = alpha;
  out.roots = std::move(sol.roots);
  out.degree_drop = sol.degree_drop;
  for (const auto& r : out.roots) out.unimodular_flags.push_back(is_unimodular(r, kUnimodularTol));
  return out;
}

std::vector<ClarkAtom> slice_clark_atoms(const Rif& phi, std::span<const Complex> base, Complex alpha) {
  const auto sr = slice_roots(phi, base, alpha);
  std::vector<ClarkAtom> atoms;
  for (std::size_t i = 0; i < sr.roots.size(); ++i) {
    if (!sr.unimodular_flags[i]) continue;
    const Complex eta = sr.roots[i] / std::abs(sr.roots[i]);
    const auto w = weight_at(phi, full_point(base, eta), alpha);
    ClarkAtom atom;
    atom.point = eta;
    atom.singular = w.zero_over_zero || w.numerator <= kWeightTol * phi.denominator().max_abs_coeff();
    atom.mass = w.zero_over_zero ? 0.0 : w.value;
    atoms.push_back(atom);
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const ClarkAtom& a, const ClarkAtom& b) { return angle_of(a.point) < angle_of(b.point); });
  return atoms;
}

double slice_expected_mass(const Rif& phi, std::span<const Complex> base, Complex alpha) {
  const Complex v = phi(full_point(base, 0.0));
  return (1.0 - std::norm(v)) / std::norm(alpha - v);
}

}  // namespace rifclark
