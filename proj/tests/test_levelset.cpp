#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "rifclark/errors.hpp"
#include "rifclark/levelset.hpp"

using namespace rifclark;
using oracle::Complex;

namespace {

const std::vector<Complex> kAlphas{oracle::e(0.0),          oracle::e(oracle::kPi / 4), oracle::e(oracle::kPi / 2),
                                   oracle::e(3 * oracle::kPi / 4), oracle::e(oracle::kPi), oracle::e(5 * oracle::kPi / 4),
                                   oracle::e(3 * oracle::kPi / 2), oracle::e(7 * oracle::kPi / 4)};

bool contains_point(const std::vector<TorusPoint>& pts, Complex a, Complex b) {
  return std::any_of(pts.begin(), pts.end(), [&](const TorusPoint& p) {
    return std::abs(p.z1 - a) < 1e-7 && std::abs(p.z2 - b) < 1e-7;
  });
}

}  // namespace

TEST_CASE("monomial: one antidiagonal branch with unit weight") {
  const auto branches = trace_branches(oracle::monomial(), 1.0, 256);
  REQUIRE(branches.size() == 1);
  const auto& b = branches[0];
  REQUIRE(b.size() == 256);
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(std::abs(b.values[i] - oracle::e(-b.theta[i])) < 1e-13);
    CHECK(b.weights[i] == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("fav at alpha = 1: branch conj(zeta), weight 1 - cos theta") {
  const auto trace = trace_level_set(oracle::fav(), 1.0);
  REQUIRE(trace.branches.size() == 1);
  const auto& b = trace.branches[0];
  double value_err = 0.0, weight_err = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    value_err = std::max(value_err, std::abs(b.values[i] - oracle::e(-b.theta[i])));
    weight_err = std::max(weight_err, std::abs(b.weights[i] - (1.0 - std::cos(b.theta[i]))));
  }
  CHECK(value_err < 1e-10);
  CHECK(weight_err < 1e-8);
  CHECK(trace.collisions.empty());
}

TEST_CASE("fav at generic alpha follows the Moebius branch and its weight") {
  for (Complex alpha : {Complex(0.0, 1.0), oracle::e(2.0), oracle::e(-0.7)}) {
    const auto branches = trace_branches(oracle::fav(), alpha, 1024);
    REQUIRE(branches.size() == 1);
    const auto& b = branches[0];
    for (std::size_t i = 1; i < b.size(); ++i) {
      const Complex zeta = oracle::e(b.theta[i]);
      const Complex g = oracle::fav_branch(alpha, zeta);
      CHECK(std::abs(b.values[i] - g) < 1e-12);
      CHECK(std::abs(b.weights[i] - oracle::fav_weight(zeta, g)) < 1e-10);
    }
  }
}

TEST_CASE("phi_e at alpha = 1: branches conj(zeta) and -conj(zeta)") {
  const auto branches = trace_branches(oracle::phi_e(), 1.0, 1024);
  REQUIRE(branches.size() == 2);
  for (const auto& b : branches) {
    const double sign = std::abs(b.values[1] - oracle::e(-b.theta[1])) < 0.1 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      CHECK(std::abs(b.values[i] - sign * oracle::e(-b.theta[i])) < 1e-12);
      // 1 / |d phi_e / d z2| on zeta_1^2 zeta_2^2 = 1 equals (1 - cos 2 theta) / 2.
      CHECK(std::abs(b.weights[i] - (1.0 - std::cos(2.0 * b.theta[i])) / 2.0) < 1e-10);
    }
  }
}

TEST_CASE("line detection") {
  for (Complex alpha : {Complex(1.0), Complex(0.0, 1.0), oracle::e(2.5)}) {
    CHECK(detect_lines(oracle::fav(), alpha).empty());
    CHECK(classify_alpha(oracle::fav(), alpha).kind == AlphaClass::Kind::Generic);
  }

  const auto lines = detect_lines(oracle::phi_e(), -1.0);
  REQUIRE(lines.size() == 4);
  int vertical = 0;
  for (const auto& l : lines) {
    CHECK((std::abs(l.tau - 1.0) < 1e-12 || std::abs(l.tau + 1.0) < 1e-12));
    CHECK(l.constant == doctest::Approx(0.25).epsilon(1e-10));
    vertical += l.axis == 1 ? 1 : 0;
  }
  CHECK(vertical == 2);
  CHECK(classify_alpha(oracle::phi_e(), -1.0).kind == AlphaClass::Kind::Exceptional);
  CHECK(classify_alpha(oracle::phi_e(), 1.0).kind == AlphaClass::Kind::Generic);
  CHECK(classify_alpha(oracle::fav(), Complex(0.0, 1.0)).kind == AlphaClass::Kind::Generic);
}

TEST_CASE("fav is exceptional at alpha = -1: p~ + p = 2 (z1 - 1)(z2 - 1)") {
  const auto lines = detect_lines(oracle::fav(), -1.0);
  REQUIRE(lines.size() == 2);
  for (const auto& l : lines) {
    CHECK(std::abs(l.tau - 1.0) < 1e-12);
    // d_1 (p~ + p) / p on z1 = 1 is 2 (z2 - 1) / (1 - z2) = -2.
    CHECK(l.constant == doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("boundary singularities") {
  const auto fav = find_singularities(oracle::fav());
  REQUIRE(fav.size() == 1);
  CHECK(contains_point(fav, 1.0, 1.0));

  CHECK(find_singularities(oracle::monomial()).empty());
  CHECK(find_singularities(oracle::half()).empty());

  const auto e = find_singularities(oracle::phi_e());
  REQUIRE(e.size() == 4);
  for (double a : {1.0, -1.0}) {
    for (double b : {1.0, -1.0}) CHECK(contains_point(e, a, b));
  }
}

TEST_CASE("residual, unimodularity and closure invariants over eight alphas") {
  for (const Rif& phi : {oracle::monomial(), oracle::fav(), oracle::phi_e(), oracle::half()}) {
    for (Complex alpha : kAlphas) {
      const auto trace = trace_level_set(phi, alpha);
      CHECK(max_level_residual(phi, trace.branches) < 1e-8);
      CHECK(trace.closure_error < 1e-8);
      for (const auto& b : trace.branches) {
        for (Complex v : b.values) CHECK(std::abs(std::abs(v) - 1.0) < 1e-8);
        for (double w : b.weights) CHECK(w >= 0.0);
      }
    }
  }
}

TEST_CASE("generic branch count equals the z2 degree") {
  CHECK(trace_branches(oracle::fav(), oracle::e(1.0), 512).size() == 1);
  CHECK(trace_branches(oracle::phi_e(), oracle::e(1.0), 512).size() == 2);
  CHECK(trace_branches(oracle::half(), oracle::e(1.0), 512).size() == 1);
}

TEST_CASE("every singularity lies on every traced level set") {
  const double h = 2.0 * oracle::kPi / 4096;
  for (const Rif& phi : {oracle::fav(), oracle::phi_e()}) {
    const auto sings = find_singularities(phi);
    for (Complex alpha : kAlphas) {
      const auto branches = trace_branches(phi, alpha, 4096);
      for (const auto& s : sings) {
        bool hit = false;
        for (const auto& b : branches) {
          for (std::size_t i = 0; i < b.size() && !hit; ++i) {
            hit = oracle::angular_gap(oracle::e(b.theta[i]), s.z1) <= h && std::abs(b.values[i] - s.z2) < 10 * h;
          }
        }
        CHECK(hit);
      }
    }
  }
}

TEST_CASE("adjacent branch samples move continuously") {
  const auto branches = trace_branches(oracle::phi_e(), oracle::e(0.4), 4096);
  for (const auto& b : branches) {
    for (std::size_t i = 1; i < b.size(); ++i) {
      if (b.jump_index && *b.jump_index == i) continue;
      CHECK(std::abs(b.values[i] - b.values[i - 1]) < 10 * (2.0 * oracle::kPi / 4096) * 2.0);
    }
  }
}

TEST_CASE("trace arguments are validated") {
  TraceOptions options;
  options.grid_n = 1000;
  CHECK_THROWS_AS(trace_level_set(oracle::fav(), 1.0, options), Error);
  options.grid_n = 128;
  CHECK_THROWS_AS(trace_level_set(oracle::fav(), 1.0, options), Error);
  CHECK_THROWS_AS(trace_branches(oracle::fav(), Complex(2.0, 0.0), 256), Error);
}
