#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "paratuck2/model.hpp"

namespace paratuck2 {

struct AlsOptions {
  int max_iters = 5000;
  /// Stop when the per-iteration improvement of the squared error, relative
  /// to the squared norm of the data tensor, falls below this.
  double rel_tol = 1e-14;
  std::uint64_t seed = 0;
  /// Rescale A/G and B/H column pairs to unit factor columns after each
  /// sweep. Off by default; scale drift is benign at these iteration counts.
  bool rebalance = false;
};

struct AlsTrace {
  std::vector<double> errors;  // squared Frobenius error after each sweep
  int iterations = 0;
  bool converged = false;
  bool rank_deficient_step = false;  // some subproblem was solved in the minimum-norm sense
};

/// One full sweep of exact least-squares updates in the order A, F, B, G, H.
/// Each subproblem is solved exactly (minimum-norm when singular), so the
/// reconstruction error cannot increase.
ParaTuck2Factors als_step(const Tensor3& T, const ParaTuck2Factors& f,
                          bool* rank_deficient = nullptr);

/// Iterates als_step from the given factors until the improvement drops
/// below rel_tol or max_iters is reached; returns the best factors seen and
/// the full error trace.
std::pair<ParaTuck2Factors, AlsTrace> als_run(const Tensor3& T, const ParaTuck2Factors& init,
                                              const AlsOptions& opts = {});

/// Same, starting from i.i.d. standard normal factors drawn from opts.seed.
std::pair<ParaTuck2Factors, AlsTrace> als_run(const Tensor3& T, const AlsOptions& opts = {});

}  // namespace paratuck2
