#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <sstream>

#include "oracles.hpp"
#include "rifclark/errors.hpp"
#include "rifclark/io.hpp"

using namespace rifclark;
using oracle::Complex;
using nlohmann::json;

namespace {

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

}  // namespace

TEST_CASE("polynomial JSON round trip is bit-exact") {
  const PolyMD p({1, 2}, {Complex(0.1, 1.0 / 3.0), Complex(-2.5e-300, 7.0), Complex(1e10, -0.0), Complex(3.141592653589793),
                          Complex(0.0, -1.0 / 7.0), Complex(2.0 / 3.0, 5.0)});
  const io::PolyFile pf{p, std::vector<int>{2, 3}};
  const auto back = io::poly_from_json(json::parse(io::dump(io::poly_to_json(pf))));
  CHECK(back.poly.degrees() == p.degrees());
  REQUIRE(back.poly.coeffs().size() == p.coeffs().size());
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    CHECK(bit_equal(back.poly.coeffs()[i].real(), p.coeffs()[i].real()));
    CHECK(bit_equal(back.poly.coeffs()[i].imag(), p.coeffs()[i].imag()));
  }
  REQUIRE(back.polydegree.has_value());
  CHECK(*back.polydegree == std::vector<int>{2, 3});
}

TEST_CASE("corpus files load") {
  const std::string dir = RIFCLARK_DATA_DIR;
  const auto fav = io::poly_from_json(io::read_json_file(dir + "/fav.json")).rif();
  CHECK(std::abs(fav(0.3, 0.2) - oracle::fav_phi(0.3, 0.2)) < 1e-15);
  const auto e = io::poly_from_json(io::read_json_file(dir + "/exceptional.json")).rif();
  CHECK(std::abs(e(0.3, Complex(0.0, 0.2)) - oracle::e_phi(0.3, Complex(0.0, 0.2))) < 1e-15);
  const auto mono = io::poly_from_json(io::read_json_file(dir + "/monomial.json")).rif();
  CHECK(std::abs(mono(0.3, 0.2) - 0.06) < 1e-15);
  CHECK(io::poly_from_json(io::read_json_file(dir + "/tridisk4.json")).poly.dims() == 3);
}

TEST_CASE("malformed input is rejected") {
  try {
    io::poly_from_json(json::parse(R"({"degrees": [1, 1], "coeffs": [[1, 0]]})"));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
  CHECK_THROWS_AS(io::poly_from_json(json::parse(R"({"degrees": [-1], "coeffs": []})")), Error);
  for (const char* text : {R"({"coeffs": [[1, 0]]})", R"({"degrees": [0], "coeffs": [[1]]})",
                           R"({"degrees": "x", "coeffs": [[1, 0]]})", "[1, 2]"}) {
    try {
      io::poly_from_json(json::parse(text));
      FAIL("expected ParseError for " << text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/rifclark.json"), Error);
}

TEST_CASE("measure JSON round trip preserves the measure") {
  const io::PolyFile pf{oracle::e_denominator(), std::nullopt};
  for (Complex alpha : {Complex(-1.0), oracle::e(0.7)}) {
    const auto mu = build_measure(pf.rif(), alpha, 512);
    const auto text = io::dump(io::measure_to_json(mu, pf));
    const auto back = io::measure_from_json(json::parse(text));
    CHECK(back.measure.alpha == mu.alpha);
    CHECK(back.measure.grid_n == mu.grid_n);
    CHECK(back.measure.kind == mu.kind);
    CHECK(back.measure.branches.size() == mu.branches.size());
    CHECK(back.measure.lines.size() == mu.lines.size());
    CHECK(total_mass(back.measure) == total_mass(mu));
    REQUIRE(back.poly.has_value());
    CHECK(std::ranges::equal(back.poly->poly.coeffs(), pf.poly.coeffs()));
    // Serializing the reloaded measure reproduces the same bytes.
    CHECK(io::dump(io::measure_to_json(back.measure, back.poly)) == text);
  }
}

TEST_CASE("branch CSV layout") {
  const auto mu = build_measure(oracle::fav(), 1.0, 256);
  std::ostringstream csv;
  io::write_branch_csv(csv, mu.branches.front(), "fav");
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# phi=fav", 0) == 0);
  std::getline(in, line);
  CHECK(line == "theta,re,im,weight");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 256);
}

TEST_CASE("tridisk CSV writers") {
  std::ostringstream diag;
  io::write_tridisk_diagonal_csv(diag, 3.0, -1.0, 16);
  std::istringstream in(diag.str());
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# phi=tridisk", 0) == 0);
  std::getline(in, line);
  CHECK(line == "theta,weight");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 15);

  std::ostringstream surf;
  io::write_tridisk_surface_csv(surf, 3.0, -1.0, 8);
  CHECK(surf.str().find("nan") != std::string::npos);
}
