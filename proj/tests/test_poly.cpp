#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rifclark/errors.hpp"
#include "rifclark/poly.hpp"
#include "rifclark/rif.hpp"

using namespace rifclark;
using oracle::Complex;

namespace {

std::vector<Complex> coeffs_of(const PolyMD& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

PolyMD tridisk_denominator(double s) {
  std::vector<Complex> c(8, 0.0);
  c[0] = s;
  c[1] = c[2] = c[4] = -1.0;
  return PolyMD({1, 1, 1}, c);
}

}  // namespace

TEST_CASE("reflection of 2 - z1 - z2 reverses and conjugates the coefficient box") {
  const PolyMD r = reflect(oracle::fav_denominator());
  // 2 z1 z2 - z2 - z1 in row-major order (1, z2, z1, z1 z2).
  const std::vector<Complex> expected{0.0, -1.0, -1.0, 2.0};
  CHECK(coeffs_of(r) == expected);
}

TEST_CASE("reflection handles complex coefficients and is an exact involution") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> deg{1 + trial % 3, 2, 1 + trial % 2};
    std::size_t size = 1;
    for (int d : deg) size *= static_cast<std::size_t>(d + 1);
    std::vector<Complex> c(size);
    for (auto& x : c) x = {g(rng), g(rng)};
    const PolyMD p(deg, c);
    const PolyMD r = reflect(p);
    for (std::size_t k = 0; k < size; ++k) CHECK(r.coeffs()[k] == std::conj(c[size - 1 - k]));
    CHECK(coeffs_of(reflect(r)) == c);
  }
}

TEST_CASE("constant polynomial reflects to itself; unattained degree is rejected") {
  CHECK(coeffs_of(reflect(PolyMD({0, 0}, {1.0}))) == std::vector<Complex>{1.0});
  CHECK_THROWS_AS(PolyMD({1, 1}, {1.0, 0.0, 0.0, 0.0}), Error);
  try {
    PolyMD({1, 1}, {1.0, 0.0, 0.0, 0.0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeNotAttained);
  }
  CHECK_THROWS_AS(PolyMD({1, 1}, {1.0, 0.0, 0.0}), Error);
}

TEST_CASE("zero polynomial cannot be reflected") {
  const PolyMD z = PolyMD::zeros({1, 1});
  CHECK_THROWS_AS(reflect(z), Error);
}

TEST_CASE("tridisk denominator reflects to s z1 z2 z3 - z1 z2 - z1 z3 - z2 z3") {
  const PolyMD r = reflect(tridisk_denominator(5.0));
  std::vector<Complex> expected(8, 0.0);
  expected[7] = 5.0;
  expected[6] = expected[5] = expected[3] = -1.0;
  CHECK(coeffs_of(r) == expected);
}

TEST_CASE("evaluation examples") {
  const std::vector<Complex> origin{0.0, 0.0};
  CHECK(eval(oracle::fav_denominator(), origin) == Complex(2.0));
  const PolyMD q = reflect(oracle::fav_denominator());
  const std::vector<Complex> ones{1.0, 1.0};
  CHECK(std::abs(eval_partial(q, 1, ones) - 1.0) < 1e-15);
  for (double s : {3.0, 4.0, 5.5}) {
    const std::vector<Complex> one3{1.0, 1.0, 1.0};
    CHECK(std::abs(eval(reflect(tridisk_denominator(s)), one3) - (s - 3.0)) < 1e-14);
  }
  const std::vector<Complex> bad{1.0};
  CHECK_THROWS_AS(eval(q, bad), Error);
}

TEST_CASE("evaluation agrees with explicit monomial sums") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  const std::vector<int> deg{3, 2, 2};
  std::vector<Complex> c(4 * 3 * 3);
  for (auto& x : c) x = {g(rng), g(rng)};
  const PolyMD p(deg, c);
  for (int k = 0; k < 50; ++k) {
    std::vector<Complex> z{oracle::random_in_disk(rng, 1.2), oracle::random_in_disk(rng, 1.2), oracle::random_in_disk(rng, 1.2)};
    CHECK(std::abs(eval(p, z) - oracle::naive_eval(deg, c, z)) < 1e-12);
  }
}

TEST_CASE("partial derivatives agree with central differences at interior points") {
  std::mt19937_64 rng(3);
  const PolyMD p = oracle::e_denominator();
  const PolyMD q = reflect(p);
  const std::vector<Complex> qc = coeffs_of(q);
  const double h = 1e-5;
  for (int k = 0; k < 100; ++k) {
    std::vector<Complex> z{oracle::random_in_disk(rng, 0.95), oracle::random_in_disk(rng, 0.95)};
    for (int axis = 0; axis < 2; ++axis) {
      auto zp = z, zm = z;
      zp[static_cast<std::size_t>(axis)] += h;
      zm[static_cast<std::size_t>(axis)] -= h;
      const Complex fd = (oracle::naive_eval({2, 2}, qc, zp) - oracle::naive_eval({2, 2}, qc, zm)) / (2.0 * h);
      const Complex exact = eval_partial(q, axis, z);
      CHECK(std::abs(fd - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("reflection preserves modulus on the torus") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 2.0 * oracle::kPi);
  std::normal_distribution<double> g;
  std::vector<Complex> c(3 * 4);
  for (auto& x : c) x = {g(rng), g(rng)};
  const PolyMD p({2, 3}, c);
  const PolyMD q = reflect(p);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const std::vector<Complex> z{oracle::e(u(rng)), oracle::e(u(rng))};
    worst = std::max(worst, std::abs(std::abs(eval(q, z)) - std::abs(eval(p, z))));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("stability certificates") {
  const auto fav = stability_check(oracle::fav_denominator(), 16);
  CHECK(fav.is_stable);
  CHECK(fav.min_modulus_on_grid >= 1.0 - 1e-9);
  CHECK(fav.grid_resolution == 16);

  const auto mono = stability_check(PolyMD({1, 1}, {0.0, 0.0, 0.0, 1.0}), 8);
  CHECK_FALSE(mono.is_stable);

  const auto s3 = stability_check(tridisk_denominator(3.0), 6);
  CHECK(s3.is_stable);
  CHECK(s3.min_modulus_on_grid == doctest::Approx(1.0).epsilon(1e-9));

  const auto unstable = stability_check(PolyMD::with_shape({1, 1}, {0.5, -1.0, 0.0, 0.0}), 8);
  CHECK_FALSE(unstable.is_stable);
  CHECK(unstable.min_modulus_on_grid == doctest::Approx(0.5));
}

TEST_CASE("RIF construction checks") {
  const Rif phi = oracle::fav();
  const std::vector<Complex> z{Complex(0.3, 0.1), Complex(-0.2, 0.4)};
  CHECK(std::abs(phi(z) - oracle::fav_phi(z[0], z[1])) < 1e-15);
  const Rif mono = oracle::monomial();
  CHECK(std::abs(mono(Complex(0.3, 0.2), Complex(0.5, -0.1)) - Complex(0.3, 0.2) * Complex(0.5, -0.1)) < 1e-15);
  CHECK(expected_total_mass(oracle::half(), 1.0) == doctest::Approx(3.0));
  // phi would not depend on z2.
  CHECK_THROWS_AS(Rif::from_denominator(PolyMD({1, 0}, {2.0, -1.0})), Error);
  // p(0) = 0.
  CHECK_THROWS_AS(Rif::from_denominator(PolyMD({1, 1}, {0.0, 1.0, 1.0, 0.0})), Error);
}
