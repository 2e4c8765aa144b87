#include <doctest.h>

#include <array>

#include "oracles.hpp"
#include "rifclark/errors.hpp"
#include "rifclark/polydisk.hpp"

using namespace rifclark;
using oracle::Complex;

namespace {

Rif monomial3() { return Rif::from_denominator(PolyMD({0, 0, 0}, {1.0}), {1, 1, 1}); }

/// psi_s^alpha from the printed closed form.
Complex psi(double s, Complex alpha, Complex z1, Complex z2) {
  return (alpha * s - alpha * z1 - alpha * z2 + z1 * z2) / (s * z1 * z2 - z1 - z2 + alpha);
}

}  // namespace

TEST_CASE("z1 z2 z3 has one hyper-branch conj(z1 z2) with unit weight") {
  const auto mu = build_measure_d(monomial3(), 1.0, 32);
  REQUIRE(mu.branches.size() == 1);
  const auto& b = mu.branches.front();
  CHECK(b.size() == 32 * 32);
  double err = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto base = b.base_point(i);
    err = std::max(err, std::abs(b.values[i] - std::conj(base[0] * base[1])));
    err = std::max(err, std::abs(b.weights[i] - 1.0));
  }
  CHECK(err < 1e-12);
  CHECK(std::abs(total_mass_d(mu) - 1.0) < 1e-12);
}

TEST_CASE("builder weights match the tridisk closed forms") {
  for (double s : {4.0, 5.0}) {
    for (Complex alpha : {Complex(1.0), Complex(0.0, 1.0), Complex(-1.0), oracle::e(2.2)}) {
      const auto mu = build_measure_d(tridisk_rif(s), alpha, 64);
      REQUIRE(mu.branches.size() == 1);
      const auto& b = mu.branches.front();
      double werr = 0.0;
      double verr = 0.0;
      for (std::size_t i = 0; i < b.size(); ++i) {
        const auto z = b.base_point(i);
        verr = std::max(verr, std::abs(b.values[i] - psi(s, alpha, z[0], z[1])));
        werr = std::max(werr, std::abs(b.weights[i] - tridisk_weight(s, alpha, z[0], z[1])));
      }
      CHECK(verr < 1e-10);
      CHECK(werr < 1e-8);
      CHECK(std::abs(total_mass_d(mu) - 1.0) < 1e-10);
      CHECK(max_level_residual_d(tridisk_rif(s), mu) < 1e-8);
    }
  }
}

TEST_CASE("boundary zeros are refused") {
  try {
    build_measure_d(tridisk_rif(3.0), 1.0, 32);
    FAIL("expected NotStable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotStable);
  }
}

TEST_CASE("tridisk level and weight examples") {
  CHECK(std::abs(tridisk_level(4.0, 1.0, 1.0, 1.0) - 1.0) < 1e-15);
  const Complex z = tridisk_level(4.0, Complex(0.0, 1.0), 1.0, -1.0);
  CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
  const std::vector<Complex> point{1.0, -1.0, z};
  CHECK(std::abs(tridisk_rif(4.0)(point) - Complex(0.0, 1.0)) < 1e-10);
  CHECK_THROWS_AS(tridisk_level(3.0, -1.0, 1.0, 1.0), Error);

  CHECK(tridisk_weight(4.0, 1.0, 1.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(tridisk_weight(3.0, Complex(0.0, 1.0), 1.0, 1.0)) < 1e-14);
  try {
    tridisk_weight(3.0, -1.0, 1.0, 1.0);
    FAIL("expected SingularDenominator");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularDenominator);
  }
}

TEST_CASE("s = 3 weight blows up along the anti-diagonal") {
  const std::size_t n = 4096;
  double max_w = 0.0;
  double max_rel = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double theta = 2.0 * oracle::kPi * static_cast<double>(k) / static_cast<double>(n);
    const double w = tridisk_weight(3.0, -1.0, oracle::e(theta), oracle::e(-theta));
    const double half = std::sin(theta / 2.0);
    const double expected = 1.0 + 1.0 / (2.0 * half * half);
    max_rel = std::max(max_rel, std::abs(w - expected) / expected);
    max_w = std::max(max_w, w);
  }
  CHECK(max_w > 1e3);
  CHECK(max_rel < 1e-8);
}

TEST_CASE("s = 3 level set at alpha = -1 has different limits into (1, 1)") {
  // psi = -1 on the anti-diagonal and (z + 3) / (3 z + 1) on the diagonal.
  const double t = 1e-3;
  const Complex anti = tridisk_level(3.0, -1.0, oracle::e(t), oracle::e(-t));
  const Complex diag = tridisk_level(3.0, -1.0, oracle::e(t), oracle::e(t));
  CHECK(std::abs(anti + 1.0) < 1e-8);
  CHECK(std::abs(diag - (oracle::e(t) + 3.0) / (3.0 * oracle::e(t) + 1.0)) < 1e-8);
  CHECK(std::abs(anti - diag) > 0.1);
}

TEST_CASE("three-variable Poisson identity") {
  const std::array<Complex, 3> z{0.2, Complex(0.0, 0.3), -0.1};
  CHECK(verify_poisson_tridisk(4.0, 1.0, z, 512).rel_error < 1e-5);

  const std::array<Complex, 3> zero{0.0, 0.0, 0.0};
  const auto m = verify_poisson_tridisk(4.0, Complex(0.0, 1.0), zero, 128);
  CHECK(std::abs(m.lhs - 1.0) < 1e-14);
  CHECK(std::abs(m.rhs - 1.0) < 1e-10);

  const std::array<Complex, 3> half{0.5, 0.5, 0.5};
  CHECK(verify_poisson_tridisk(3.0, Complex(0.0, 1.0), half, 1024).rel_error < 1e-4);

  const auto mu = build_measure_d(tridisk_rif(5.0), oracle::e(0.4), 128);
  const std::vector<Complex> pt{0.2, Complex(0.0, 0.3), -0.1};
  CHECK(verify_poisson_d(mu, tridisk_rif(5.0), pt).rel_error < 1e-8);
}
