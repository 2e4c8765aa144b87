#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rifclark/clark.hpp"
#include "rifclark/contact.hpp"
#include "rifclark/embedding.hpp"
#include "rifclark/poly.hpp"
#include "rifclark/polydisk.hpp"
#include "rifclark/rif.hpp"

namespace rifclark::io {

using nlohmann::json;

/// Denominator polynomial as stored on disk, with an optional polydegree for
/// RIFs carrying monomial factors.
struct PolyFile {
  PolyMD poly = PolyMD::zeros({0});
  std::optional<std::vector<int>> polydegree;

  Rif rif() const;
};

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

/// {"degrees": [...], "coeffs": [[re, im], ...]} (+ "polydegree").
json poly_to_json(const PolyFile& p);
PolyFile poly_from_json(const json& j);

json measure_to_json(const ClarkMeasure& mu, const std::optional<PolyFile>& source);

struct MeasureFile {
  ClarkMeasure measure;
  std::optional<PolyFile> poly;
};
MeasureFile measure_from_json(const json& j);

json poisson_report_to_json(const PoissonResidualReport& r);
json singularity_report_to_json(const SingularityReport& r);
json gram_report_to_json(const GramReport& r);
json density_report_to_json(const DensityReport& r);

/// One row per grid node: theta, re(g), im(g), weight, after a header
/// comment naming phi, alpha and N.
void write_branch_csv(std::ostream& out, const Branch& b, const std::string& phi_label);

/// theta1, theta2, arg(psi), weight over the uniform grid of T^2 for phi_s.
/// Singular nodes are written as nan.
void write_tridisk_surface_csv(std::ostream& out, double s, Complex alpha, std::size_t grid_n);

/// theta, weight along (e^{i theta}, e^{-i theta}) for theta = 2 pi k / N,
/// k = 1..N-1.
void write_tridisk_diagonal_csv(std::ostream& out, double s, Complex alpha, std::size_t grid_n);

/// Pretty-printed with sorted keys and a trailing newline.
std::string dump(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace rifclark::io
