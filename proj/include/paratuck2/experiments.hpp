#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "paratuck2/model.hpp"
#include "paratuck2/solver.hpp"

namespace paratuck2 {

/// The built-in deterministic 2 x 2 x 10 test instance: small integer
/// factors, with zero entries in G and H that exercise pivot selection.
ParaTuck2Factors reference_factors();
Tensor3 reference_tensor();

/// Report fragment shared by all runs: residuals, per-stage singular-value
/// ratios, generator values, pivot, wall time.
nlohmann::json report_from(const DecompositionDiagnostics& diag, double wall_time_s);

/// Runs the algebraic pipeline on the built-in deterministic instance, with
/// an optional single-shot ALS refinement, and returns the report.
nlohmann::json run_deterministic_repro(int als_refine);

enum class McMethod { Algebraic, Als, Both };

McMethod parse_method(const std::string& name);  // throws Argument on unknown names

struct MonteCarloConfig {
  int trials = 100;
  Dims3 dims{10, 10, 15};
  std::uint64_t base_seed = 0;
  /// Success threshold on the absolute squared Frobenius residual.
  double threshold = 1e-16;
  McMethod method = McMethod::Algebraic;
  /// Iteration cap for the ALS branch.
  int als_max_iters = 5000;
};

/// Seeded sweep: trial t uses seed base_seed + t; failures of individual
/// trials are recorded as non-successes and never abort the sweep. Rows are
/// ordered by trial index, then method.
nlohmann::json run_monte_carlo(const MonteCarloConfig& cfg);

}  // namespace paratuck2
