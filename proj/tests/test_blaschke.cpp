#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "rifclark/blaschke.hpp"
#include "rifclark/errors.hpp"
#include "rifclark/roots.hpp"

using namespace rifclark;
using oracle::Complex;

namespace {

/// Ascending coefficients of prod (z - r_k).
std::vector<Complex> from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (Complex r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = next;
  }
  return c;
}

double match_error(std::vector<Complex> a, std::vector<Complex> b) {
  double worst = 0.0;
  for (Complex x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](Complex u, Complex v) { return std::abs(u - x) < std::abs(v - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

}  // namespace

TEST_CASE("root finder recovers prescribed roots") {
  std::mt19937_64 rng(1);
  for (int deg = 1; deg <= 8; ++deg) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Complex> roots;
      for (int k = 0; k < deg; ++k) roots.push_back(oracle::random_in_disk(rng, 2.0));
      const auto found = polynomial_roots(from_roots(roots));
      REQUIRE(found.size() == roots.size());
      CHECK(match_error(found, roots) < 1e-9);
    }
  }
}

TEST_CASE("root finder handles zero roots and double roots") {
  const auto r0 = polynomial_roots(from_roots({0.0, 0.0, Complex(0.5, 0.5)}));
  CHECK(match_error(r0, {0.0, 0.0, Complex(0.5, 0.5)}) < 1e-12);
  const auto r2 = polynomial_roots(from_roots({1.0, 1.0, -1.0}));
  CHECK(match_error(r2, {1.0, 1.0, -1.0}) < 1e-7);
}

TEST_CASE("monomial slice has the single root alpha / zeta") {
  const Rif phi = oracle::monomial();
  for (Complex alpha : {Complex(1.0), Complex(0.0, 1.0), oracle::e(2.2)}) {
    const std::vector<Complex> base{1.0};
    const auto s = slice_roots(phi, base, alpha);
    REQUIRE(s.roots.size() == 1);
    CHECK(std::abs(s.roots[0] - alpha) < 1e-14);
    CHECK(s.unimodular_flags[0]);
  }
}

TEST_CASE("fav slice roots follow the Moebius branch") {
  const Rif phi = oracle::fav();
  const std::vector<Complex> base{Complex(0.0, 1.0)};
  const auto s = slice_roots(phi, base, 1.0);
  REQUIRE(s.roots.size() == 1);
  CHECK(std::abs(s.roots[0] - Complex(0.0, -1.0)) < 1e-14);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.1, 2.0 * oracle::kPi - 0.1);
  for (int k = 0; k < 50; ++k) {
    const Complex zeta = oracle::e(u(rng)), alpha = oracle::e(u(rng));
    const std::vector<Complex> b{zeta};
    const auto r = slice_roots(phi, b, alpha);
    REQUIRE(r.roots.size() == 1);
    CHECK(std::abs(r.roots[0] - oracle::fav_branch(alpha, zeta)) < 1e-12);
  }
}

TEST_CASE("slice through a line component vanishes identically") {
  const Rif phi = oracle::phi_e();
  const std::vector<Complex> base{1.0};
  CHECK_THROWS_AS(slice_roots(phi, base, -1.0), Error);
  try {
    slice_roots(phi, base, -1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IdenticallyZeroSlice);
  }
}

TEST_CASE("generic slices have n unimodular roots with small residuals") {
  const Rif phi = oracle::phi_e();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 2.0 * oracle::kPi);
  for (int k = 0; k < 100; ++k) {
    const std::vector<Complex> base{oracle::e(u(rng))};
    const Complex alpha = oracle::e(u(rng));
    const auto s = slice_roots(phi, base, alpha);
    REQUIRE(s.roots.size() == 2);
    for (Complex r : s.roots) {
      CHECK(std::abs(std::abs(r) - 1.0) < 1e-8);
      const Complex res = oracle::e_phi(base[0], r) - alpha;
      CHECK(std::abs(res) < 1e-9);
    }
  }
}

TEST_CASE("slice Clark atoms") {
  const std::vector<Complex> one{1.0};
  for (Complex alpha : {Complex(1.0), Complex(0.0, -1.0)}) {
    const auto atoms = slice_clark_atoms(oracle::monomial(), one, alpha);
    REQUIRE(atoms.size() == 1);
    CHECK(std::abs(atoms[0].point - alpha) < 1e-14);
    CHECK(atoms[0].mass == doctest::Approx(1.0).epsilon(1e-14));
  }

  for (double theta : {0.3, 1.7, 3.0, 5.1}) {
    const std::vector<Complex> b{oracle::e(theta)};
    const auto atoms = slice_clark_atoms(oracle::fav(), b, 1.0);
    REQUIRE(atoms.size() == 1);
    CHECK(std::abs(atoms[0].point - oracle::e(-theta)) < 1e-14);
    CHECK(atoms[0].mass == doctest::Approx(1.0 - std::cos(theta)).epsilon(1e-12));
  }

  const auto singular = slice_clark_atoms(oracle::fav(), one, 1.0);
  REQUIRE(singular.size() == 1);
  CHECK(singular[0].mass == 0.0);
  CHECK(singular[0].singular);
}

TEST_CASE("slice atom masses add up to the one-variable Clark mass") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 2.0 * oracle::kPi);
  for (const Rif& phi : {oracle::fav(), oracle::phi_e(), oracle::half()}) {
    for (int k = 0; k < 40; ++k) {
      const std::vector<Complex> b{oracle::e(u(rng))};
      const Complex alpha = oracle::e(u(rng));
      double total = 0.0;
      for (const auto& a : slice_clark_atoms(phi, b, alpha)) {
        CHECK(a.mass >= 0.0);
        total += a.mass;
      }
      const double expected = slice_expected_mass(phi, b, alpha);
      CHECK(std::abs(total - expected) < 1e-9 * std::max(1.0, expected));
    }
  }
}
