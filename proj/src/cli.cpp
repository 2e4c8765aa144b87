#include "rifclark/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "rifclark/clark.hpp"
#include "rifclark/contact.hpp"
#include "rifclark/embedding.hpp"
#include "rifclark/errors.hpp"
#include "rifclark/io.hpp"
#include "rifclark/levelset.hpp"
#include "rifclark/polydisk.hpp"

namespace rifclark::cli {

using io::json;

Complex parse_alpha(const std::string& text) {
  Complex z;
  if (text == "1") {
    z = 1.0;
  } else if (text == "-1") {
    z = -1.0;
  } else if (text == "i") {
    z = Complex(0.0, 1.0);
  } else if (text == "-i") {
    z = Complex(0.0, -1.0);
  } else if (text.rfind("exp:", 0) == 0) {
    try {
      std::size_t used = 0;
      const double x = std::stod(text.substr(4), &used);
      if (used != text.size() - 4) throw std::invalid_argument("trailing characters");
      z = unimodular(std::numbers::pi * x);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "cannot parse alpha '" + text + "'");
    }
  } else {
    const auto comma = text.find(',');
    try {
      std::size_t used = 0;
      if (comma == std::string::npos) {
        const double re = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        z = re;
      } else {
        const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
        const double re = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument("trailing characters");
        const double im = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument("trailing characters");
        z = Complex(re, im);
      }
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "cannot parse alpha '" + text + "'");
    }
  }
  if (!is_unimodular(z, 1e-3)) throw Error(ErrorCode::InvalidArgument, "alpha '" + text + "' is not on the unit circle");
  return z / std::abs(z);
}

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_grid(const RunConfig& c, std::size_t minimum) {
  if (!is_power_of_two(c.grid_n) || c.grid_n < minimum) {
    throw Error(ErrorCode::InvalidArgument, "grid must be a power of two >= " + std::to_string(minimum));
  }
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorCode::InvalidArgument, std::string(flag) + " is required");
}

void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.output_path.empty()) {
    out << text;
  } else {
    io::write_text_file(c.output_path, text);
  }
}

std::vector<BidiskPoint> random_points(std::uint64_t seed, int count, double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<BidiskPoint> pts;
  for (int i = 0; i < count; ++i) {
    BidiskPoint z;
    for (auto& c : z) c = radius * std::sqrt(unit(rng)) * unimodular(kTwoPi * unit(rng));
    pts.push_back(z);
  }
  return pts;
}

const char* kind_name(AlphaClass::Kind k) { return k == AlphaClass::Kind::Generic ? "generic" : "exceptional"; }

int cmd_analyze(const RunConfig& c, std::ostream& out) {
  require(c.poly_path, "--poly");
  require_grid(c, 256);
  const auto pf = io::poly_from_json(io::read_json_file(c.poly_path));
  const Rif phi = pf.rif();
  const Complex alpha = c.alphas.front();
  const ClarkMeasure mu = build_measure(phi, alpha, c.grid_n);
  const std::string text = io::dump(io::measure_to_json(mu, pf));
  emit(c, out, text);
  if (!c.output_path.empty()) {
    out << "kind: " << kind_name(mu.kind) << "\n"
        << "branches: " << mu.branches.size() << "\n"
        << "vertical lines: " << mu.lines.size() << "\n"
        << "mass: " << std::setprecision(17) << total_mass(mu) << "\n"
        << "expected mass: " << expected_total_mass(phi, alpha) << "\n";
  }
  return 0;
}

int cmd_levelset(const RunConfig& c, std::ostream& out) {
  require(c.poly_path, "--poly");
  require(c.output_path, "--output");
  require_grid(c, 256);
  const auto pf = io::poly_from_json(io::read_json_file(c.poly_path));
  const Rif phi = pf.rif();
  TraceOptions options;
  options.grid_n = c.grid_n;
  const auto trace = trace_level_set(phi, c.alphas.front(), options);
  for (std::size_t j = 0; j < trace.branches.size(); ++j) {
    std::ostringstream csv;
    io::write_branch_csv(csv, trace.branches[j], c.poly_path);
    const std::string path = c.output_path + "_branch" + std::to_string(j) + ".csv";
    io::write_text_file(path, csv.str());
    out << path << "\n";
  }
  const auto lines = detect_lines(phi, c.alphas.front());
  out << "lines: " << lines.size() << "\n";
  for (const auto& l : lines) {
    out << "  axis " << l.axis << " tau " << std::setprecision(17) << l.tau.real() << ',' << l.tau.imag()
        << " constant " << l.constant << "\n";
  }
  out << "singularities: " << trace.singularities.size() << "\n"
      << "collisions: " << trace.collisions.size() << "\n";
  return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  require(c.measure_path, "--measure");
  if (c.points < 1) throw Error(ErrorCode::InvalidArgument, "--points must be positive");
  if (!(c.radius > 0.0 && c.radius < 1.0)) throw Error(ErrorCode::InvalidArgument, "--radius must lie in (0, 1)");
  const auto mf = io::measure_from_json(io::read_json_file(c.measure_path));
  if (!mf.poly) throw Error(ErrorCode::ParseError, "measure file carries no \"poly\" entry");
  const Rif phi = mf.poly->rif();
  // Draw until enough points keep phi(z) away from alpha.
  std::vector<BidiskPoint> pts;
  std::uint64_t seed = c.seed;
  while (static_cast<int>(pts.size()) < c.points) {
    for (const auto& z : random_points(seed++, c.points, c.radius)) {
      if (static_cast<int>(pts.size()) < c.points && std::abs(phi(z[0], z[1]) - mf.measure.alpha) > 1e-6) pts.push_back(z);
    }
  }
  const auto report = verify_poisson(mf.measure, phi, pts);
  json j = io::poisson_report_to_json(report);
  const bool pass = report.max_rel_error() < c.tol;
  j["tolerance"] = c.tol;
  j["pass"] = pass;
  emit(c, out, io::dump(j));
  if (!c.output_path.empty()) {
    out << (pass ? "PASS" : "FAIL") << " max relative error " << std::setprecision(6) << report.max_rel_error()
        << " (tolerance " << c.tol << ")\n";
  }
  return pass ? 0 : 1;
}

int cmd_contact(const RunConfig& c, std::ostream& out) {
  require(c.poly_path, "--poly");
  require_grid(c, 256);
  const Rif phi = io::poly_from_json(io::read_json_file(c.poly_path)).rif();
  json reports = json::array();
  for (const auto& s : find_singularities(phi)) {
    reports.push_back(io::singularity_report_to_json(analyze_singularity(phi, s, c.alphas, c.grid_n)));
  }
  emit(c, out, io::dump(json{{"singularities", reports}}));
  if (!c.output_path.empty()) out << "singularities: " << reports.size() << "\n";
  return 0;
}

int cmd_embed(const RunConfig& c, std::ostream& out) {
  require(c.poly_path, "--poly");
  require_grid(c, 256);
  if (c.degree < 1) throw Error(ErrorCode::InvalidArgument, "--degree must be at least 1");
  const Rif phi = io::poly_from_json(io::read_json_file(c.poly_path)).rif();
  const Complex alpha = c.alphas.front();
  const ClarkMeasure mu = build_measure(phi, alpha, c.grid_n);
  json j;
  j["alpha"] = io::complex_to_json(alpha);
  j["kind"] = kind_name(mu.kind);
  const auto kernels = random_points(c.seed, c.kernels, 0.6);
  j["gram"] = io::gram_report_to_json(gram_isometry_check(phi, mu, kernels));
  json density = json::array();
  for (int d = 1; d <= c.degree; ++d) density.push_back(io::density_report_to_json(density_distance(mu, d)));
  j["density"] = std::move(density);
  try {
    const auto cr = conj_rational(phi, alpha, mu.branches);
    j["conj_rational"] = {{"ok", true}, {"max_branch_error", cr.max_branch_error}};
  } catch (const Error& e) {
    j["conj_rational"] = {{"ok", false}, {"code", to_string(e.code())}, {"message", e.what()}};
  }
  emit(c, out, io::dump(j));
  return 0;
}

int cmd_tridisk(const RunConfig& c, std::ostream& out) {
  if (!is_power_of_two(c.grid_n) || c.grid_n < 4) throw Error(ErrorCode::InvalidArgument, "grid must be a power of two >= 4");
  std::ostringstream csv;
  if (c.diagonal) {
    io::write_tridisk_diagonal_csv(csv, c.s, c.alphas.front(), c.grid_n);
  } else {
    io::write_tridisk_surface_csv(csv, c.s, c.alphas.front(), c.grid_n);
  }
  emit(c, out, csv.str());
  return 0;
}

int cmd_reconstruct(const RunConfig& c, std::ostream& out) {
  require(c.measure_path, "--measure");
  if (c.degree < 0) throw Error(ErrorCode::InvalidArgument, "--degree must be nonnegative");
  const auto mf = io::measure_from_json(io::read_json_file(c.measure_path));
  const auto rec = herglotz_reconstruct(mf.measure, c.degree);
  json j;
  j["degree"] = c.degree;
  // 9 x 9 grid of points with |z_i| <= 0.5 on each axis: radii 0, 0.25, 0.5.
  json samples = json::array();
  double sup = 0.0;
  std::optional<Rif> phi;
  if (mf.poly) phi = mf.poly->rif();
  std::vector<Complex> axis{0.0};
  for (double r : {0.25, 0.5}) {
    for (int k = 0; k < 4; ++k) axis.push_back(r * unimodular(kTwoPi * k / 4.0));
  }
  for (Complex z1 : axis) {
    for (Complex z2 : axis) {
      const Complex v = rec(z1, z2);
      json s = {{"z", json::array({io::complex_to_json(z1), io::complex_to_json(z2)})}, {"value", io::complex_to_json(v)}};
      if (phi) {
        const double e = std::abs(v - (*phi)(z1, z2));
        sup = std::max(sup, e);
        s["error"] = e;
      }
      samples.push_back(std::move(s));
    }
  }
  j["samples"] = std::move(samples);
  if (phi) j["sup_error"] = sup;
  emit(c, out, io::dump(j));
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::Analyze: return cmd_analyze(config, out);
      case Command::Levelset: return cmd_levelset(config, out);
      case Command::Verify: return cmd_verify(config, out);
      case Command::Contact: return cmd_contact(config, out);
      case Command::Embed: return cmd_embed(config, out);
      case Command::Tridisk: return cmd_tridisk(config, out);
      case Command::Reconstruct: return cmd_reconstruct(config, out);
    }
  } catch (const Error& e) {
    err << io::dump(json{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}});
    return 2;
  } catch (const std::exception& e) {
    err << io::dump(json{{"error", {{"code", "Internal"}, {"message", e.what()}}}});
    return 2;
  }
  return 2;
}

int main(int argc, char** argv) {
  CLI::App app{"Clark measures of rational inner functions"};
  app.require_subcommand(1);
  RunConfig config;
  std::vector<std::string> alpha_text;

  auto add_alpha = [&](CLI::App* sub, bool many) {
    auto* opt = sub->add_option("--alpha", alpha_text, many ? "Clark parameter (repeatable)" : "Clark parameter");
    if (!many) opt->expected(1);
  };
  auto* analyze = app.add_subcommand("analyze", "Build the Clark measure and export it as JSON");
  analyze->add_option("--poly", config.poly_path, "Denominator polynomial JSON")->required();
  add_alpha(analyze, false);
  analyze->add_option("--grid", config.grid_n, "Grid size (power of two)");
  analyze->add_option("--output,-o", config.output_path, "Measure JSON path");

  auto* levelset = app.add_subcommand("levelset", "Export traced branches as CSV");
  levelset->add_option("--poly", config.poly_path)->required();
  add_alpha(levelset, false);
  levelset->add_option("--grid", config.grid_n);
  levelset->add_option("--output,-o", config.output_path, "Output prefix")->required();

  auto* verify = app.add_subcommand("verify", "Check the Poisson identity of an exported measure");
  verify->add_option("--measure", config.measure_path)->required();
  verify->add_option("--points", config.points);
  verify->add_option("--radius", config.radius);
  verify->add_option("--tol", config.tol);
  verify->add_option("--seed", config.seed);
  verify->add_option("--output,-o", config.output_path);

  auto* contact = app.add_subcommand("contact", "Weight vanishing orders at boundary singularities");
  contact->add_option("--poly", config.poly_path)->required();
  add_alpha(contact, true);
  contact->add_option("--grid", config.grid_n);
  contact->add_option("--output,-o", config.output_path);

  auto* embed = app.add_subcommand("embed", "Gram isometry and density checks of the Clark embedding");
  embed->add_option("--poly", config.poly_path)->required();
  add_alpha(embed, false);
  embed->add_option("--grid", config.grid_n);
  embed->add_option("--degree", config.degree);
  embed->add_option("--kernels", config.kernels);
  embed->add_option("--seed", config.seed);
  embed->add_option("--output,-o", config.output_path);

  auto* tridisk = app.add_subcommand("tridisk", "Closed-form level surface and weight of the tridisk family");
  tridisk->add_option("--s", config.s)->required();
  add_alpha(tridisk, false);
  tridisk->add_option("--grid", config.grid_n);
  tridisk->add_flag("--diagonal", config.diagonal, "Sample along (e^{i theta}, e^{-i theta})");
  tridisk->add_option("--output,-o", config.output_path);

  auto* reconstruct = app.add_subcommand("reconstruct", "Herglotz reconstruction of phi from a measure");
  reconstruct->add_option("--measure", config.measure_path)->required();
  reconstruct->add_option("--degree", config.degree);
  reconstruct->add_option("--output,-o", config.output_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (analyze->parsed()) config.command = Command::Analyze;
  else if (levelset->parsed()) config.command = Command::Levelset;
  else if (verify->parsed()) config.command = Command::Verify;
  else if (contact->parsed()) config.command = Command::Contact;
  else if (embed->parsed()) config.command = Command::Embed;
  else if (tridisk->parsed()) config.command = Command::Tridisk;
  else config.command = Command::Reconstruct;

  if (config.command == Command::Tridisk && tridisk->count("--grid") == 0) config.grid_n = 256;

  if (!alpha_text.empty()) {
    try {
      config.alphas.clear();
      for (const auto& a : alpha_text) config.alphas.push_back(parse_alpha(a));
    } catch (const Error& e) {
      std::cerr << io::dump(json{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}});
      return 2;
    }
  } else if (config.command == Command::Contact) {
    config.alphas = {Complex(1.0), Complex(0.0, 1.0), unimodular(std::numbers::pi / 3.0)};
  }
  return run(config, std::cout, std::cerr);
}

}  // namespace rifclark::cli
