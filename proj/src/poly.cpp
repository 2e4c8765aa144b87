#include "rifclark/poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "rifclark/errors.hpp"
#include "rifclark/roots.hpp"

namespace rifclark {

namespace {

std::size_t box_size(const std::vector<int>& degrees) {
  std::size_t n = 1;
  for (int d : degrees) n *= static_cast<std::size_t>(d + 1);
  return n;
}

// Horner recursion over the axes. When diff_axis == axis the derivative in
// that variable is taken; deeper recursion levels return derivative values
// when diff_axis lies below, which the outer levels combine linearly.
Complex horner_md(const Complex* c, const PolyMD& p, int axis, std::span<const Complex> z, int diff_axis) {
  const int n = p.degree(axis);
  const bool last = axis + 1 == p.dims();
  const std::size_t stride = p.stride(axis);
  auto inner = [&](int i) -> Complex {
    const Complex* sub = c + static_cast<std::size_t>(i) * stride;
    return last ? *sub : horner_md(sub, p, axis + 1, z, diff_axis);
  };
  const Complex x = z[static_cast<std::size_t>(axis)];
  Complex acc = 0.0;
  if (axis == diff_axis) {
    for (int i = n; i >= 1; --i) acc = acc * x + static_cast<double>(i) * inner(i);
  } else {
    for (int i = n; i >= 0; --i) acc = acc * x + inner(i);
  }
  return acc;
}

void check_point(const PolyMD& p, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != p.dims()) {
    std::ostringstream msg;
    msg << "point has " << z.size() << " coordinates, polynomial has " << p.dims() << " variables";
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

// Advances a multi-index over the box; returns false after the last index.
bool next_index(std::vector<int>& idx, const std::vector<int>& degrees) {
  for (std::size_t a = idx.size(); a-- > 0;) {
    if (++idx[a] <= degrees[a]) return true;
    idx[a] = 0;
  }
  return false;
}

}  // namespace

PolyMD::PolyMD(std::vector<int> degrees, std::vector<Complex> coeffs)
    : PolyMD(std::move(degrees), std::move(coeffs), true) {}

PolyMD PolyMD::with_shape(std::vector<int> degrees, std::vector<Complex> coeffs) {
  return PolyMD(std::move(degrees), std::move(coeffs), false);
}

PolyMD PolyMD::zeros(std::vector<int> degrees) {
  const std::size_t n = box_size(degrees);
  return PolyMD(std::move(degrees), std::vector<Complex>(n), false);
}

PolyMD::PolyMD(std::vector<int> degrees, std::vector<Complex> coeffs, bool check_attained)
    : degrees_(std::move(degrees)), coeffs_(std::move(coeffs)) {
  if (degrees_.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial needs at least one variable");
  for (int d : degrees_) {
    if (d < 0) throw Error(ErrorCode::InvalidArgument, "negative degree");
  }
  if (coeffs_.size() != box_size(degrees_)) {
    std::ostringstream msg;
    msg << "coefficient count " << coeffs_.size() << " does not match degree box size " << box_size(degrees_);
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  strides_.assign(degrees_.size(), 1);
  for (std::size_t a = degrees_.size() - 1; a-- > 0;) {
    strides_[a] = strides_[a + 1] * static_cast<std::size_t>(degrees_[a + 1] + 1);
  }
  if (check_attained) {
    for (int a = 0; a < dims(); ++a) {
      if (!attains_degree(a)) {
        std::ostringstream msg;
        msg << "declared degree " << degrees_[static_cast<std::size_t>(a)] << " in variable " << a + 1
            << " is not attained";
        throw Error(ErrorCode::DegreeNotAttained, msg.str());
      }
    }
  }
}

Complex PolyMD::coeff(std::span<const int> exponent) const {
  std::size_t off = 0;
  for (int a = 0; a < dims(); ++a) off += static_cast<std::size_t>(exponent[static_cast<std::size_t>(a)]) * stride(a);
  return coeffs_.at(off);
}

Complex& PolyMD::coeff(std::span<const int> exponent) {
  std::size_t off = 0;
  for (int a = 0; a < dims(); ++a) off += static_cast<std::size_t>(exponent[static_cast<std::size_t>(a)]) * stride(a);
  return coeffs_.at(off);
}

double PolyMD::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool PolyMD::is_zero() const { return max_abs_coeff() == 0.0; }

bool PolyMD::attains_degree(int axis) const {
  const double tol = kCoeffTol * max_abs_coeff();
  const int n = degree(axis);
  if (is_zero()) return false;
  std::vector<int> idx(degrees_.size(), 0);
  do {
    if (idx[static_cast<std::size_t>(axis)] == n && std::abs(coeff(idx)) > tol) return true;
  } while (next_index(idx, degrees_));
  return false;
}

bool PolyMD::attains_degrees() const {
  for (int a = 0; a < dims(); ++a) {
    if (!attains_degree(a)) return false;
  }
  return true;
}

Complex eval(const PolyMD& p, std::span<const Complex> z) {
  check_point(p, z);
  return horner_md(p.coeffs().data(), p, 0, z, -1);
}

Complex eval_partial(const PolyMD& p, int axis, std::span<const Complex> z) {
  check_point(p, z);
  if (axis < 0 || axis >= p.dims()) throw Error(ErrorCode::DimensionMismatch, "variable index out of range");
  return horner_md(p.coeffs().data(), p, 0, z, axis);
}

PolyMD reflect(const PolyMD& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot reflect the zero polynomial");
  // Reversing every axis of a row-major box reverses the flat array.
  std::vector<Complex> out(p.coeffs().rbegin(), p.coeffs().rend());
  for (auto& c : out) c = std::conj(c);
  return PolyMD::with_shape(p.degrees(), std::move(out));
}

PolyMD linear_combination(Complex a, const PolyMD& p, Complex b, const PolyMD& q) {
  if (p.degrees() != q.degrees()) throw Error(ErrorCode::DimensionMismatch, "shapes differ");
  std::vector<Complex> out(p.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * p.coeffs()[i] + b * q.coeffs()[i];
  return PolyMD::with_shape(p.degrees(), std::move(out));
}

PolyMD pad_to(const PolyMD& p, const std::vector<int>& degrees) {
  if (degrees.size() != p.degrees().size()) throw Error(ErrorCode::DimensionMismatch, "variable count differs");
  for (std::size_t a = 0; a < degrees.size(); ++a) {
    if (degrees[a] < p.degrees()[a]) throw Error(ErrorCode::InvalidArgument, "cannot pad to a smaller degree");
  }
  PolyMD out = PolyMD::zeros(degrees);
  std::vector<int> idx(degrees.size(), 0);
  do {
    out.coeff(idx) = p.coeff(idx);
  } while (next_index(idx, p.degrees()));
  return out;
}

std::vector<Complex> slice_coefficients(const PolyMD& p, int axis, std::span<const Complex> point) {
  check_point(p, point);
  const auto& deg = p.degrees();
  const std::size_t d = deg.size();
  // Power tables for the fixed variables.
  std::vector<std::vector<Complex>> powers(d);
  for (std::size_t a = 0; a < d; ++a) {
    if (static_cast<int>(a) == axis) continue;
    powers[a].resize(static_cast<std::size_t>(deg[a] + 1));
    Complex w = 1.0;
    for (auto& x : powers[a]) {
      x = w;
      w *= point[a];
    }
  }
  std::vector<Complex> out(static_cast<std::size_t>(deg[static_cast<std::size_t>(axis)] + 1), Complex(0.0));
  std::vector<int> idx(d, 0);
  std::size_t flat = 0;
  do {
    Complex term = p.coeffs()[flat];
    for (std::size_t a = 0; a < d; ++a) {
      if (static_cast<int>(a) != axis) term *= powers[a][static_cast<std::size_t>(idx[a])];
    }
    out[static_cast<std::size_t>(idx[static_cast<std::size_t>(axis)])] += term;
    ++flat;
  } while (next_index(idx, deg));
  return out;
}

std::vector<PolyMD> coefficient_polynomials(const PolyMD& p, int axis) {
  if (axis < 0 || axis >= p.dims()) throw Error(ErrorCode::DimensionMismatch, "variable index out of range");
  std::vector<int> sub = p.degrees();
  const int n = sub[static_cast<std::size_t>(axis)];
  sub[static_cast<std::size_t>(axis)] = 0;
  std::vector<PolyMD> out(static_cast<std::size_t>(n + 1), PolyMD::zeros(sub));
  std::vector<int> idx(p.degrees().size(), 0);
  do {
    std::vector<int> target = idx;
    const int k = target[static_cast<std::size_t>(axis)];
    target[static_cast<std::size_t>(axis)] = 0;
    out[static_cast<std::size_t>(k)].coeff(target) = p.coeff(idx);
  } while (next_index(idx, p.degrees()));
  return out;
}

StabilityCertificate stability_check(const PolyMD& p, int grid_n) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "stability of the zero polynomial");
  if (grid_n < 2) throw Error(ErrorCode::InvalidArgument, "stability grid needs at least 2 radii");

  const int d = p.dims();
  const double scale = p.max_abs_coeff();
  StabilityCertificate cert;
  cert.grid_resolution = grid_n;
  cert.min_modulus_on_grid = std::numeric_limits<double>::infinity();

  // Samples of the closed disk; the centre is listed once.
  std::vector<Complex> disk{Complex(0.0)};
  const int angles = 4 * grid_n;
  for (int r = 1; r < grid_n; ++r) {
    const double radius = static_cast<double>(r) / static_cast<double>(grid_n - 1);
    for (int t = 0; t < angles; ++t) disk.push_back(radius * unimodular(kTwoPi * t / angles));
  }

  std::vector<Complex> point(static_cast<std::size_t>(d));
  auto record = [&](double modulus, int axis, Complex root) {
    if (modulus < cert.min_modulus_on_grid) {
      cert.min_modulus_on_grid = modulus;
      cert.worst_point = point;
      cert.worst_point[static_cast<std::size_t>(axis)] = root;
    }
  };

  for (int axis = 0; axis < d; ++axis) {
    if (p.degree(axis) == 0) continue;
    // Odometer over disk^(d-1).
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    bool more = true;
    while (more) {
      for (int a = 0; a < d; ++a) {
        if (a != axis) point[static_cast<std::size_t>(a)] = disk[idx[static_cast<std::size_t>(a)]];
      }
      auto c = slice_coefficients(p, axis, point);
      double slice_scale = 0.0;
      for (const auto& x : c) slice_scale = std::max(slice_scale, std::abs(x));
      if (slice_scale <= kCoeffTol * scale) {
        record(0.0, axis, Complex(0.0));
      } else {
        trim_leading(c, kCoeffTol);
        if (c.size() > 1) {
          std::vector<Complex> roots;
          try {
            roots = polynomial_roots(c);
          } catch (const Error& e) {
            std::ostringstream msg;
            msg << "stability scan, slice in variable " << axis + 1 << " at (";
            for (int a = 0; a < d; ++a) msg << (a ? ", " : "") << point[static_cast<std::size_t>(a)];
            msg << "): " << e.what();
            throw Error(ErrorCode::RootFindFailure, msg.str());
          }
          for (const auto& r : roots) record(std::abs(r), axis, r);
        }
      }
      more = false;
      for (int a = d; a-- > 0;) {
        if (a == axis) continue;
        auto& i = idx[static_cast<std::size_t>(a)];
        if (++i < disk.size()) {
          more = true;
          break;
        }
        i = 0;
      }
    }
  }
  if (!std::isfinite(cert.min_modulus_on_grid)) {
    // Constant polynomial: no slice has roots.
    cert.min_modulus_on_grid = std::numeric_limits<double>::max();
  }
  cert.is_stable = cert.min_modulus_on_grid >= 1.0 - 1e-9;
  return cert;
}

}  // namespace rifclark
