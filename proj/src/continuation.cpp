#include "continuation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "rifclark/errors.hpp"
#include "rifclark/roots.hpp"

namespace rifclark::detail {

namespace {
constexpr double kAmbiguityRatio = 0.3;
}

Match best_match(const std::vector<Complex>& pred, const std::vector<Complex>& roots) {
  const std::size_t n = pred.size();
  Match m;
  m.perm.resize(n);
  std::iota(m.perm.begin(), m.perm.end(), 0);
  if (n <= 6) {
    std::vector<std::size_t> perm = m.perm;
    double best = std::numeric_limits<double>::infinity();
    do {
      double cost = 0.0;
      for (std::size_t j = 0; j < n; ++j) cost += std::norm(roots[perm[j]] - pred[j]);
      if (cost < best) {
        best = cost;
        m.perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::vector<bool> used_root(n, false), used_branch(n, false);
    for (std::size_t step = 0; step < n; ++step) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t bj = 0, bk = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (used_branch[j]) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (used_root[k]) continue;
          const double d = std::norm(roots[k] - pred[j]);
          if (d < best) {
            best = d;
            bj = j;
            bk = k;
          }
        }
      }
      used_branch[bj] = used_root[bk] = true;
      m.perm[bj] = bk;
    }
  }
  for (std::size_t j = 0; j < n && !m.ambiguous; ++j) {
    const double d = std::abs(roots[m.perm[j]] - pred[j]);
    for (std::size_t k = 0; k < n; ++k) {
      if (k != m.perm[j] && d > kAmbiguityRatio * std::abs(roots[k] - pred[j])) {
        m.ambiguous = true;
        break;
      }
    }
  }
  return m;
}

Tracer::Tracer(const LevelSlicer& slicer, std::size_t n, const TraceOptions& options, BasePath base_at,
               std::vector<std::size_t>* collisions)
    : slicer_(slicer), n_(n), options_(options), base_at_(std::move(base_at)), collisions_(collisions) {}

void Tracer::reset(std::vector<Complex> values, double t) {
  cur_ = std::move(values);
  vel_.assign(n_, 0.0);
  t_ = t;
}

SliceSolution Tracer::solve_at(double t) const {
  const auto base = base_at_(t);
  return solve_slice(slicer_, base);
}

bool Tracer::advance(double t_to, const SliceSolution& sol, std::size_t node, bool force_refine) {
  if (!usable(sol)) return false;
  if (force_refine && subdivide(t_to, sol, 1, node)) return true;
  return step(t_to, sol, force_refine ? 1 : 0, node);
}

bool Tracer::advance(double t_to, bool force_refine) {
  return advance(t_to, solve_at(t_to), 0, force_refine);
}

bool Tracer::usable(const SliceSolution& sol) const {
  return sol.status == SliceStatus::Ok && sol.roots.size() == n_;
}

std::vector<Complex> Tracer::predict(double t_to) const {
  std::vector<Complex> pred(n_);
  for (std::size_t j = 0; j < n_; ++j) pred[j] = cur_[j] * unimodular(vel_[j] * (t_to - t_));
  return pred;
}

bool Tracer::step(double t_to, const SliceSolution& sol, int depth, std::size_t node) {
  if (!usable(sol)) return false;
  const Match m = best_match(predict(t_to), sol.roots);
  if (m.ambiguous && depth < options_.refine_levels && subdivide(t_to, sol, depth + 1, node)) return true;
  if (m.ambiguous) {
    if (options_.strict) {
      std::ostringstream msg;
      msg << "branch matching ambiguous at t = " << t_to << " after " << options_.refine_levels
          << " refinement levels";
      throw Error(ErrorCode::ContinuationCollision, msg.str());
    }
    if (collisions_ && (collisions_->empty() || collisions_->back() != node)) collisions_->push_back(node);
  }
  commit(t_to, sol, m.perm);
  return true;
}

bool Tracer::subdivide(double t_to, const SliceSolution& final_sol, int depth, std::size_t node) {
  const auto saved_cur = cur_;
  const auto saved_vel = vel_;
  const double t0 = t_;
  const int f = options_.refine_factor;
  for (int s = 1; s < f; ++s) {
    const double t = t0 + (t_to - t0) * s / f;
    if (!step(t, solve_at(t), depth, node)) {
      cur_ = saved_cur;
      vel_ = saved_vel;
      t_ = t0;
      return false;
    }
  }
  return step(t_to, final_sol, depth, node);
}

void Tracer::commit(double t_to, const SliceSolution& sol, const std::vector<std::size_t>& perm) {
  const double h = t_to - t_;
  for (std::size_t j = 0; j < n_; ++j) {
    Complex r = newton_polish(sol.coefficients, sol.roots[perm[j]], options_.newton_iterations);
    r /= std::abs(r);
    if (h != 0.0) vel_[j] = std::arg(r / cur_[j]) / h;
    cur_[j] = r;
  }
  t_ = t_to;
}

}  // namespace rifclark::detail
