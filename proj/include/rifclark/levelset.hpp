#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rifclark/rif.hpp"

namespace rifclark {

struct TorusPoint {
  Complex z1;
  Complex z2;
};

/// Per-sample provenance bits of a Branch.
enum SampleFlag : std::uint8_t {
  kSampleSolved = 0,
  /// Slice vanished identically (a vertical line passes through this node).
  kSampleLineNode = 1u << 0,
  /// Value or weight obtained by one-sided quadratic extrapolation.
  kSampleExtrapolated = 1u << 1,
  /// Weight formula was 0/0 here.
  kSampleZeroOverZero = 1u << 2,
};

/// One analytic graph z_2 = g(z_1) of the level set, sampled on the uniform
/// grid theta_i = 2 pi i / N.
struct Branch {
  Complex alpha;
  std::vector<double> theta;
  std::vector<Complex> values;
  std::vector<double> weights;
  std::vector<std::uint8_t> flags;
  /// Node where branch labels may be permuted when the trace closes up.
  std::optional<std::size_t> jump_index;

  std::size_t size() const { return values.size(); }
};

/// A coordinate line on which phi is identically alpha. axis = 1 means the
/// vertical line z_1 = tau, axis = 2 the horizontal line z_2 = tau.
struct LineComponent {
  int axis = 1;
  Complex tau;
  double constant = 0.0;
};

struct AlphaClass {
  enum class Kind { Generic, Exceptional };
  Kind kind = Kind::Generic;
  /// Lines on both axes.
  std::vector<LineComponent> lines;
};

struct TraceOptions {
  std::size_t grid_n = 4096;
  /// Steps landing within refine_radius of a singularity's z_1 coordinate are
  /// always taken in refine_factor substeps.
  bool refine_near_singularities = true;
  double refine_radius = 0.05;
  int refine_factor = 8;
  /// Ambiguous matches are retried on grids refined by refine_factor, at most
  /// this many times.
  int refine_levels = 3;
  int newton_iterations = 3;
  /// Throw ContinuationCollision instead of recording unresolved matches.
  bool strict = false;
};

/// Full output of a trace, including diagnostics.
struct LevelSetTrace {
  std::vector<Branch> branches;
  std::vector<std::size_t> line_nodes;
  std::vector<std::size_t> degree_drop_nodes;
  /// Target nodes of steps whose matching stayed ambiguous after refinement.
  std::vector<std::size_t> collisions;
  std::vector<TorusPoint> singularities;
  /// Largest distance between the continued values after one full turn and
  /// the (permuted) starting values.
  double closure_error = 0.0;
};

/// Traces the n = deg_{z_2} analytic branches of {p~ - alpha p = 0} over the
/// circle by nearest-neighbour continuation of slice roots.
LevelSetTrace trace_level_set(const Rif& phi, Complex alpha, const TraceOptions& options = {});

std::vector<Branch> trace_branches(const Rif& phi, Complex alpha, std::size_t grid_n);

/// Vertical and horizontal lines contained in the alpha-level set, with
/// their mass constants.
std::vector<LineComponent> detect_lines(const Rif& phi, Complex alpha);

AlphaClass classify_alpha(const Rif& phi, Complex alpha);

/// Common zeros of p and p~ on the two-torus.
std::vector<TorusPoint> find_singularities(const Rif& phi, std::size_t scan_grid = 2048);

/// Largest |p~ - alpha p| / scale over all branch samples.
double max_level_residual(const Rif& phi, const std::vector<Branch>& branches);

}  // namespace rifclark
