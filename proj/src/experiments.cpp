#include "paratuck2/experiments.hpp"

#include <chrono>
#include <cmath>

#include "paratuck2/als.hpp"

namespace paratuck2 {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json root_to_json(const ProjectiveRoot& r) {
  if (r.infinite) return {{"infinite", true}};
  return {{"infinite", false}, {"re", r.value.real()}, {"im", r.value.imag()}};
}

}  // namespace

ParaTuck2Factors reference_factors() {
  Matrix F(2, 2), A(2, 2), B(2, 2), G(2, 10), H(2, 10);
  F << 1, 1, 2, -1;
  A << 1, 1, -1, 2;
  B << 1, 1, 1, -3;
  G << -5, -4, -3, -2, -1, 0, 1, 2, 3, 4,  //
      1, 0, 2, 1, -3, 2, -2, -1, 0, 1;
  H << -5, -4, -3, -2, -1, 0, 1, 2, 3, 4,  //
      1, 1, 1, 1, 1, 1, 1, 1, 1, 1;
  return {std::move(A), std::move(B), std::move(F), std::move(G), std::move(H)};
}

Tensor3 reference_tensor() { return reconstruct(reference_factors()); }

json report_from(const DecompositionDiagnostics& diag, double wall_time_s) {
  return {
      {"residual_abs", diag.residual_abs},
      {"residual_rel", diag.residual_rel},
      {"residual_abs_unrefined", diag.residual_abs_unrefined},
      {"als_iters_run", diag.als_iters_run},
      {"diagnostics",
       {{"mode1_rank_ratio", diag.mode1_rank_ratio},
        {"mode2_rank_ratio", diag.mode2_rank_ratio},
        {"kernel_ratio", diag.kernel_ratio},
        {"kernel_gap", diag.kernel_gap},
        {"ambiguous_kernel", diag.ambiguous_kernel},
        {"rank1_ratio", diag.rank1_ratio},
        {"core_rank1_ratio", diag.core_rank1_ratio},
        {"pivot", diag.pivot}}},
      {"generators",
       {{"alpha1", root_to_json(diag.generators.alpha1)},
        {"alpha2", root_to_json(diag.generators.alpha2)},
        {"beta1", root_to_json(diag.generators.beta1)},
        {"beta2", root_to_json(diag.generators.beta2)}}},
      {"wall_time_s", wall_time_s},
  };
}

json run_deterministic_repro(int als_refine) {
  const auto start = Clock::now();
  const Tensor3 T = reference_tensor();
  DecomposeOptions opts;
  opts.als_iters = als_refine;
  const DecomposeResult res = decompose(T, opts);
  json report = report_from(res.diagnostics, seconds_since(start));
  report["als_refine"] = als_refine;
  report["dims"] = {T.dim1(), T.dim2(), T.dim3()};
  return report;
}

McMethod parse_method(const std::string& name) {
  if (name == "algebraic") return McMethod::Algebraic;
  if (name == "als") return McMethod::Als;
  if (name == "both") return McMethod::Both;
  throw Error(ErrorKind::Argument, "monte-carlo", "unknown method \"" + name + "\"");
}

namespace {

std::string method_name(McMethod m) {
  switch (m) {
    case McMethod::Algebraic: return "algebraic";
    case McMethod::Als: return "als";
    case McMethod::Both: return "both";
  }
  return "?";
}

json run_algebraic_trial(const Tensor3& T) {
  const auto start = Clock::now();
  json row;
  row["method"] = "algebraic";
  try {
    const DecomposeResult res = decompose(T);
    row["residual_abs"] = res.diagnostics.residual_abs;
    row["residual_rel"] = res.diagnostics.residual_rel;
    row["error"] = nullptr;
  } catch (const Error& e) {
    row["residual_abs"] = nullptr;
    row["residual_rel"] = nullptr;
    row["error"] = {{"kind", std::string(to_string(e.kind()))},
                    {"stage", e.stage()},
                    {"message", e.what()}};
  }
  row["wall_time_s"] = seconds_since(start);
  return row;
}

json run_als_trial(const Tensor3& T, std::uint64_t seed, int max_iters) {
  const auto start = Clock::now();
  json row;
  row["method"] = "als";
  AlsOptions opts;
  opts.max_iters = max_iters;
  opts.seed = seed;
  const auto [factors, trace] = als_run(T, opts);
  const double err = frob_dist_sq(T, reconstruct(factors));
  row["residual_abs"] = err;
  row["residual_rel"] = err / std::max(frob_norm_sq(T), 1e-300);
  row["iterations"] = trace.iterations;
  row["converged"] = trace.converged;
  row["error"] = nullptr;
  row["wall_time_s"] = seconds_since(start);
  return row;
}

void mark_success(json& row, double threshold) {
  const bool ok = row["residual_abs"].is_number() && row["residual_abs"].get<double>() < threshold;
  row["success"] = ok;
}

}  // namespace

json run_monte_carlo(const MonteCarloConfig& cfg) {
  if (cfg.trials < 1) {
    throw Error(ErrorKind::Argument, "monte-carlo", "trials must be >= 1");
  }
  json runs = json::array();
  int success_algebraic = 0;
  int success_als = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(t);
    json instance_error = nullptr;
    Tensor3 T;
    try {
      T = random_instance(cfg.dims, seed).second;
    } catch (const Error& e) {
      instance_error = {{"kind", std::string(to_string(e.kind()))},
                        {"stage", e.stage()},
                        {"message", e.what()}};
    }
    const bool want_algebraic = cfg.method != McMethod::Als;
    const bool want_als = cfg.method != McMethod::Algebraic;
    if (want_algebraic) {
      json row = instance_error.is_null() ? run_algebraic_trial(T)
                                          : json{{"method", "algebraic"},
                                                 {"residual_abs", nullptr},
                                                 {"residual_rel", nullptr},
                                                 {"error", instance_error},
                                                 {"wall_time_s", 0.0}};
      row["trial"] = t;
      row["seed"] = seed;
      mark_success(row, cfg.threshold);
      success_algebraic += row["success"].get<bool>() ? 1 : 0;
      runs.push_back(std::move(row));
    }
    if (want_als) {
      json row = instance_error.is_null() ? run_als_trial(T, seed, cfg.als_max_iters)
                                          : json{{"method", "als"},
                                                 {"residual_abs", nullptr},
                                                 {"residual_rel", nullptr},
                                                 {"error", instance_error},
                                                 {"wall_time_s", 0.0}};
      row["trial"] = t;
      row["seed"] = seed;
      mark_success(row, cfg.threshold);
      success_als += row["success"].get<bool>() ? 1 : 0;
      runs.push_back(std::move(row));
    }
  }
  json report = {
      {"trials", cfg.trials},
      {"dims", {cfg.dims.n1, cfg.dims.n2, cfg.dims.n3}},
      {"base_seed", cfg.base_seed},
      {"threshold", cfg.threshold},
      {"method", method_name(cfg.method)},
      {"runs", std::move(runs)},
  };
  if (cfg.method != McMethod::Als) report["success_count_algebraic"] = success_algebraic;
  if (cfg.method != McMethod::Algebraic) report["success_count_als"] = success_als;
  report["success_count"] =
      cfg.method == McMethod::Als ? success_als : success_algebraic;
  return report;
}

}  // namespace paratuck2
