#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "rifclark/types.hpp"

namespace rifclark::cli {

enum class Command { Analyze, Levelset, Verify, Contact, Embed, Tridisk, Reconstruct };

struct RunConfig {
  Command command = Command::Analyze;
  std::string poly_path;
  std::string measure_path;
  /// File (or file prefix for levelset); empty means standard output.
  std::string output_path;
  std::vector<Complex> alphas{Complex(1.0)};
  std::size_t grid_n = 4096;
  /// verify: number of random test points, their radius bound and tolerance.
  int points = 20;
  double radius = 0.7;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  /// embed / reconstruct truncation degree.
  int degree = 8;
  /// embed: number of random kernel points.
  int kernels = 10;
  /// tridisk parameter and mode.
  double s = 4.0;
  bool diagonal = false;
};

/// "1", "-1", "i", "-i", "exp:x" (angle x pi) or "re,im", normalized to the
/// unit circle. Throws InvalidArgument on anything else or on a value too
/// far from the circle to be a typo.
Complex parse_alpha(const std::string& text);

/// Runs one command. Exit status 0 on success, 1 when a verification fails,
/// 2 on any error (reported as JSON on `err`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and dispatches to run.
int main(int argc, char** argv);

}  // namespace rifclark::cli
