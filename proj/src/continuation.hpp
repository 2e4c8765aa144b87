#pragma once

#include <functional>
#include <vector>

#include "rifclark/blaschke.hpp"
#include "rifclark/levelset.hpp"
#include "rifclark/types.hpp"

namespace rifclark::detail {

struct Match {
  /// Branch j takes roots[perm[j]].
  std::vector<std::size_t> perm;
  bool ambiguous = false;
};

/// Minimum-cost assignment of roots to predicted values (exhaustive for up to
/// six roots, greedy beyond). Ambiguous when some assigned distance exceeds
/// 0.3 times the distance to an alternative root.
Match best_match(const std::vector<Complex>& pred, const std::vector<Complex>& roots);

/// Nearest-neighbour continuation of the n slice roots along a path
/// t -> base_at(t) in the base torus, with recursive subdivision of
/// ambiguous steps.
class Tracer {
 public:
  using BasePath = std::function<std::vector<Complex>(double)>;

  Tracer(const LevelSlicer& slicer, std::size_t n, const TraceOptions& options, BasePath base_at,
         std::vector<std::size_t>* collisions);

  void reset(std::vector<Complex> values, double t);

  const std::vector<Complex>& values() const { return cur_; }
  double position() const { return t_; }

  SliceSolution solve_at(double t) const;

  /// Moves the state to t_to where the slice solution `sol` is already known.
  /// Returns false, leaving the state unchanged, when some slice on the way
  /// is unusable (identically zero or dropping degree).
  bool advance(double t_to, const SliceSolution& sol, std::size_t node, bool force_refine);
  bool advance(double t_to, bool force_refine);

 private:
  bool usable(const SliceSolution& sol) const;
  std::vector<Complex> predict(double t_to) const;
  bool step(double t_to, const SliceSolution& sol, int depth, std::size_t node);
  bool subdivide(double t_to, const SliceSolution& final_sol, int depth, std::size_t node);
  void commit(double t_to, const SliceSolution& sol, const std::vector<std::size_t>& perm);

  const LevelSlicer& slicer_;
  std::size_t n_;
  TraceOptions options_;
  BasePath base_at_;
  std::vector<std::size_t>* collisions_;
  std::vector<Complex> cur_;
  std::vector<double> vel_;
  double t_ = 0.0;
};

}  // namespace rifclark::detail
