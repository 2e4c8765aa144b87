#include "rifclark/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "rifclark/errors.hpp"

namespace rifclark::io {

Rif PolyFile::rif() const {
  return polydegree ? Rif::from_denominator(poly, *polydegree) : Rif::from_denominator(poly);
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::ParseError, "complex number must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json poly_to_json(const PolyFile& p) {
  json j;
  j["degrees"] = p.poly.degrees();
  json coeffs = json::array();
  for (Complex c : p.poly.coeffs()) coeffs.push_back(complex_to_json(c));
  j["coeffs"] = std::move(coeffs);
  if (p.polydegree) j["polydegree"] = *p.polydegree;
  return j;
}

PolyFile poly_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("degrees") || !j.contains("coeffs")) {
      throw Error(ErrorCode::ParseError, "polynomial needs \"degrees\" and \"coeffs\"");
    }
    auto degrees = j.at("degrees").get<std::vector<int>>();
    std::vector<Complex> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(complex_from_json(c));
    PolyFile p;
    p.poly = PolyMD(std::move(degrees), std::move(coeffs));
    if (j.contains("polydegree")) p.polydegree = j.at("polydegree").get<std::vector<int>>();
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

json measure_to_json(const ClarkMeasure& mu, const std::optional<PolyFile>& source) {
  json j;
  j["alpha"] = complex_to_json(mu.alpha);
  j["grid_n"] = mu.grid_n;
  j["kind"] = mu.kind == AlphaClass::Kind::Generic ? "generic" : "exceptional";
  json branches = json::array();
  for (const auto& b : mu.branches) {
    json jb;
    json values = json::array();
    for (Complex v : b.values) values.push_back(complex_to_json(v));
    jb["values"] = std::move(values);
    jb["weights"] = b.weights;
    jb["flags"] = b.flags;
    jb["jump_index"] = b.jump_index ? json(*b.jump_index) : json(nullptr);
    branches.push_back(std::move(jb));
  }
  j["branches"] = std::move(branches);
  json lines = json::array();
  for (const auto& l : mu.lines) {
    lines.push_back({{"axis", l.axis}, {"tau", complex_to_json(l.tau)}, {"constant", l.constant}});
  }
  j["lines"] = std::move(lines);
  j["mass"] = total_mass(mu);
  json sing = json::array();
  for (const auto& s : mu.singularities) sing.push_back(json::array({complex_to_json(s.z1), complex_to_json(s.z2)}));
  j["singularities"] = std::move(sing);
  j["collisions"] = mu.collisions;
  if (source) j["poly"] = poly_to_json(*source);
  return j;
}

MeasureFile measure_from_json(const json& j) {
  try {
    MeasureFile f;
    ClarkMeasure& mu = f.measure;
    mu.alpha = complex_from_json(j.at("alpha"));
    mu.grid_n = j.at("grid_n").get<std::size_t>();
    if (mu.grid_n == 0) throw Error(ErrorCode::ParseError, "grid_n must be positive");
    mu.kind = j.value("kind", std::string("generic")) == "exceptional" ? AlphaClass::Kind::Exceptional
                                                                        : AlphaClass::Kind::Generic;
    const double h = kTwoPi / static_cast<double>(mu.grid_n);
    for (const auto& jb : j.at("branches")) {
      Branch b;
      b.alpha = mu.alpha;
      for (const auto& v : jb.at("values")) b.values.push_back(complex_from_json(v));
      b.weights = jb.at("weights").get<std::vector<double>>();
      if (b.values.size() != mu.grid_n || b.weights.size() != mu.grid_n) {
        throw Error(ErrorCode::ParseError, "branch sample count differs from grid_n");
      }
      b.flags = jb.contains("flags") ? jb.at("flags").get<std::vector<std::uint8_t>>()
                                     : std::vector<std::uint8_t>(mu.grid_n, kSampleSolved);
      b.theta.resize(mu.grid_n);
      for (std::size_t i = 0; i < mu.grid_n; ++i) b.theta[i] = h * static_cast<double>(i);
      if (jb.contains("jump_index") && !jb.at("jump_index").is_null()) b.jump_index = jb.at("jump_index").get<std::size_t>();
      mu.branches.push_back(std::move(b));
    }
    for (const auto& jl : j.at("lines")) {
      mu.lines.push_back({jl.at("axis").get<int>(), complex_from_json(jl.at("tau")), jl.at("constant").get<double>()});
    }
    if (j.contains("singularities")) {
      for (const auto& s : j.at("singularities")) mu.singularities.push_back({complex_from_json(s.at(0)), complex_from_json(s.at(1))});
    }
    if (j.contains("poly")) f.poly = poly_from_json(j.at("poly"));
    return f;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

json poisson_report_to_json(const PoissonResidualReport& r) {
  json pts = json::array();
  for (const auto& z : r.test_points) pts.push_back(json::array({complex_to_json(z[0]), complex_to_json(z[1])}));
  return {{"test_points", pts}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"rel_errors", r.rel_errors},
          {"max_rel_error", r.max_rel_error()}};
}

json singularity_report_to_json(const SingularityReport& r) {
  json entries = json::array();
  for (const auto& e : r.branch_orders) {
    entries.push_back({{"alpha", complex_to_json(e.alpha)},
                       {"branch", e.branch},
                       {"order", e.fit.order},
                       {"r_squared", e.fit.r_squared},
                       {"c_lower", e.fit.c_lower},
                       {"c_upper", e.fit.c_upper}});
  }
  json flagged = json::array();
  for (Complex a : r.flagged_alphas) flagged.push_back(complex_to_json(a));
  return {{"location", json::array({complex_to_json(r.location.z1), complex_to_json(r.location.z2)})},
          {"nontangential_value", complex_to_json(r.nontangential_value)},
          {"branch_orders", entries},
          {"flagged_alphas", flagged}};
}

namespace {
json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}
}  // namespace

json gram_report_to_json(const GramReport& r) {
  json pts = json::array();
  for (const auto& z : r.sample_points) pts.push_back(json::array({complex_to_json(z[0]), complex_to_json(z[1])}));
  return {{"sample_points", pts},
          {"gram_model", matrix_to_json(r.gram_model)},
          {"gram_embedded", matrix_to_json(r.gram_embedded)},
          {"max_abs_error", r.max_abs_error},
          {"max_asymmetry", r.max_asymmetry}};
}

json density_report_to_json(const DensityReport& r) {
  return {{"alpha", complex_to_json(r.alpha)},
          {"degree", r.degree},
          {"distance_zbar2", r.distance_zbar2},
          {"distance_zbar1", r.distance_zbar1},
          {"verdict", to_string(r.verdict)},
          {"truncated_eigenvalues", r.truncated_eigenvalues},
          {"largest_eigenvalue", r.largest_eigenvalue}};
}

namespace {
void set_precision(std::ostream& out) { out << std::setprecision(17); }

std::string complex_label(Complex z) {
  std::ostringstream s;
  s << std::setprecision(17) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return s.str();
}
}  // namespace

void write_branch_csv(std::ostream& out, const Branch& b, const std::string& phi_label) {
  set_precision(out);
  out << "# phi=" << phi_label << " alpha=" << complex_label(b.alpha) << " N=" << b.size() << "\n";
  out << "theta,re,im,weight\n";
  for (std::size_t i = 0; i < b.size(); ++i) {
    out << b.theta[i] << ',' << b.values[i].real() << ',' << b.values[i].imag() << ',' << b.weights[i] << '\n';
  }
}

void write_tridisk_surface_csv(std::ostream& out, double s, Complex alpha, std::size_t grid_n) {
  set_precision(out);
  out << "# phi=tridisk s=" << s << " alpha=" << complex_label(alpha) << " N=" << grid_n << "\n";
  out << "theta1,theta2,arg_psi,weight\n";
  const double h = kTwoPi / static_cast<double>(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    for (std::size_t j = 0; j < grid_n; ++j) {
      const double t1 = h * static_cast<double>(i), t2 = h * static_cast<double>(j);
      out << t1 << ',' << t2 << ',';
      try {
        const Complex z1 = unimodular(t1), z2 = unimodular(t2);
        const Complex psi = tridisk_level(s, alpha, z1, z2);
        out << std::arg(psi) << ',' << tridisk_weight(s, alpha, z1, z2) << '\n';
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularDenominator) throw;
        out << "nan,nan\n";
      }
    }
  }
}

void write_tridisk_diagonal_csv(std::ostream& out, double s, Complex alpha, std::size_t grid_n) {
  set_precision(out);
  out << "# phi=tridisk s=" << s << " alpha=" << complex_label(alpha) << " N=" << grid_n
      << " path=(e^{i theta}, e^{-i theta})\n";
  out << "theta,weight\n";
  const double h = kTwoPi / static_cast<double>(grid_n);
  for (std::size_t k = 1; k < grid_n; ++k) {
    const double t = h * static_cast<double>(k);
    out << t << ',' << tridisk_weight(s, alpha, unimodular(t), unimodular(-t)) << '\n';
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace rifclark::io
