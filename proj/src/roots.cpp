#include "rifclark/roots.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "rifclark/errors.hpp"

namespace rifclark {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 500;

// Initial guesses on a circle whose radius is the geometric mean of the root
// moduli, rotated off the real axis to avoid symmetric stalls.
std::vector<Complex> initial_guesses(std::span<const Complex> c) {
  const std::size_t n = c.size() - 1;
  const double radius = std::pow(std::abs(c.front()) / std::abs(c.back()), 1.0 / static_cast<double>(n));
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    z[k] = radius * unimodular(kTwoPi * static_cast<double>(k) / static_cast<double>(n) + 0.4);
  }
  return z;
}

}  // namespace

HornerValue horner(std::span<const Complex> c, Complex z) {
  Complex value = 0.0;
  Complex derivative = 0.0;
  double magnitude = 0.0;
  const double az = std::abs(z);
  for (std::size_t k = c.size(); k-- > 0;) {
    derivative = derivative * z + value;
    value = value * z + c[k];
    magnitude = magnitude * az + std::abs(c[k]);
  }
  return {value, derivative, magnitude};
}

bool trim_leading(std::vector<Complex>& c, double rel_tol) {
  double scale = 0.0;
  for (const auto& x : c) scale = std::max(scale, std::abs(x));
  bool dropped = false;
  while (!c.empty() && std::abs(c.back()) <= rel_tol * scale) {
    c.pop_back();
    dropped = true;
  }
  return dropped;
}

Complex newton_polish(std::span<const Complex> c, Complex z, int iterations) {
  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < iterations; ++it) {
    const auto h = horner(c, z);
    if (std::abs(h.value) <= 2.0 * kEps * h.magnitude) break;
    if (h.derivative == 0.0) break;
    const Complex step = h.value / h.derivative;
    if (std::abs(step) >= last_step) break;
    last_step = std::abs(step);
    z -= step;
  }
  return z;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> c_in) {
  if (c_in.empty() || c_in.back() == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "polynomial_roots: leading coefficient is zero");
  }
  std::size_t zeros = 0;
  while (zeros < c_in.size() && c_in[zeros] == 0.0) ++zeros;
  std::span<const Complex> c = c_in.subspan(zeros);
  std::vector<Complex> roots(zeros, Complex(0.0));
  const std::size_t n = c.size() - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }

  std::vector<Complex> z = initial_guesses(c);
  std::vector<bool> done(n, false);
  std::size_t remaining = n;
  for (int it = 0; it < kMaxIterations && remaining > 0; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const auto h = horner(c, z[i]);
      if (std::abs(h.value) <= 8.0 * kEps * h.magnitude) {
        done[i] = true;
        --remaining;
        continue;
      }
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      Complex step;
      if (h.derivative == 0.0) {
        step = 1e-3 * (1.0 + std::abs(z[i])) * unimodular(static_cast<double>(it));
      } else {
        const Complex ratio = h.value / h.derivative;
        step = ratio / (1.0 - ratio * repulsion);
      }
      z[i] -= step;
    }
  }
  if (remaining > 0) {
    // Accept stragglers whose backward error is still tiny.
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const auto h = horner(c, z[i]);
      if (std::abs(h.value) > 1e3 * kEps * h.magnitude) {
        std::ostringstream msg;
        msg << "Aberth iteration did not converge for degree " << n << " polynomial (root estimate "
            << z[i] << ", residual " << std::abs(h.value) << ")";
        throw Error(ErrorCode::RootFindFailure, msg.str());
      }
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

}  // namespace rifclark
