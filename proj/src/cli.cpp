#include "paratuck2/cli.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paratuck2/experiments.hpp"
#include "paratuck2/io.hpp"
#include "paratuck2/model.hpp"
#include "paratuck2/solver.hpp"

namespace paratuck2 {

namespace {

using nlohmann::json;

Dims3 parse_dims(const std::string& spec) {
  Dims3 d;
  char comma1 = 0, comma2 = 0;
  std::istringstream in(spec);
  if (!(in >> d.n1 >> comma1 >> d.n2 >> comma2 >> d.n3) || comma1 != ',' || comma2 != ',' ||
      !in.eof()) {
    throw Error(ErrorKind::Argument, "cli", "bad --dims, expected N1,N2,N3, got \"" + spec + "\"");
  }
  return d;
}

void write_report(const json& report, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::Io, "report", "cannot open " + path + " for writing");
  }
  out << report.dump(2) << "\n";
}

int cmd_synth(const std::string& dims_spec, std::uint64_t seed, const std::string& out_path,
              const std::string& factors_path) {
  const Dims3 dims = parse_dims(dims_spec);
  const auto [factors, tensor] = random_instance(dims, seed);
  save_tensor(tensor, out_path);
  if (!factors_path.empty()) save_factors(factors, factors_path);
  return kExitOk;
}

int cmd_decompose(const std::string& in_path, const std::string& out_path,
                  std::optional<double> tol, int als_refine, const std::string& report_path) {
  const auto start = std::chrono::steady_clock::now();
  const Tensor3 T = load_tensor(in_path);
  DecomposeOptions opts;
  opts.als_iters = als_refine;
  opts.verify_tol = tol;
  const DecomposeResult res = decompose(T, opts);
  save_factors(res.factors, out_path);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json report = report_from(res.diagnostics, elapsed);
  report["input"] = in_path;
  report["dims"] = {T.dim1(), T.dim2(), T.dim3()};
  write_report(report, report_path);
  std::cout << "residual_abs " << res.diagnostics.residual_abs << " residual_rel "
            << res.diagnostics.residual_rel << "\n";
  return kExitOk;
}

int cmd_repro_det(int als_refine, const std::string& report_path) {
  const json report = run_deterministic_repro(als_refine);
  write_report(report, report_path);
  std::cout << "residual_abs " << report["residual_abs"].get<double>() << "\n";
  return kExitOk;
}

int cmd_monte_carlo(int trials, const std::string& dims_spec, std::uint64_t seed, double threshold,
                    const std::string& method, const std::string& report_path) {
  MonteCarloConfig cfg;
  cfg.trials = trials;
  cfg.dims = parse_dims(dims_spec);
  cfg.base_seed = seed;
  cfg.threshold = threshold;
  cfg.method = parse_method(method);
  const json report = run_monte_carlo(cfg);
  write_report(report, report_path);
  std::cout << "success_count " << report["success_count"].get<int>() << " of " << trials << "\n";
  return kExitOk;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Argument: return kExitArgument;
    case ErrorKind::RankDeficient: return kExitRankDeficient;
    case ErrorKind::Underdetermined: return kExitUnderdetermined;
    case ErrorKind::NotRankOne: return kExitNotRankOne;
    case ErrorKind::SingularRecovery: return kExitSingularRecovery;
    case ErrorKind::DegeneratePivot: return kExitDegeneratePivot;
    case ErrorKind::DegeneratePolynomial: return kExitDegeneratePolynomial;
    case ErrorKind::NotDecomposable: return kExitNotDecomposable;
    case ErrorKind::Numerical: return kExitNumerical;
    case ErrorKind::Io: return kExitIo;
    case ErrorKind::Parse: return kExitParse;
  }
  return 1;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Rank-(2,2) ParaTuck-2 tensor decomposition"};
  app.require_subcommand(1);

  std::string dims_spec;
  std::uint64_t seed = 0;
  std::string output_path, factors_path, input_path, report_path;
  std::optional<double> tol;
  int als_refine = 0;
  int trials = 100;
  double threshold = 1e-16;
  std::string method = "algebraic";

  auto* synth = app.add_subcommand("synth", "Generate a random rank-(2,2) instance");
  synth->add_option("--dims", dims_spec, "Tensor dims N1,N2,N3")->required();
  synth->add_option("--seed", seed, "Generator seed")->required();
  synth->add_option("--output", output_path, "Tensor file to write")->required();
  synth->add_option("--factors", factors_path, "Also write the ground-truth factors here");

  auto* dec = app.add_subcommand("decompose", "Decompose a tensor file");
  dec->add_option("--input", input_path, "Tensor file to read")->required();
  dec->add_option("--output", output_path, "Factor file to write")->required();
  dec->add_option("--tol", tol, "Verify mode: fail when the squared residual exceeds this");
  dec->add_option("--als-refine", als_refine, "ALS refinement sweeps after the algebraic pipeline");
  dec->add_option("--report", report_path, "Write a JSON run report here");

  auto* repro = app.add_subcommand("repro-det", "Run the built-in deterministic instance");
  repro->add_option("--als-refine", als_refine, "0 or 1 refinement sweeps")
      ->check(CLI::Range(0, 1));
  repro->add_option("--report", report_path, "Write a JSON run report here")->required();

  auto* mc = app.add_subcommand("monte-carlo", "Seeded random-instance sweep");
  mc->add_option("--trials", trials, "Number of trials")->required();
  mc->add_option("--dims", dims_spec, "Tensor dims N1,N2,N3")->required();
  mc->add_option("--seed", seed, "Base seed; trial t uses seed+t")->required();
  mc->add_option("--threshold", threshold, "Success threshold on the squared residual")
      ->required();
  mc->add_option("--method", method, "algebraic | als | both")->required();
  mc->add_option("--report", report_path, "Write the JSON report here")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth->parsed()) return cmd_synth(dims_spec, seed, output_path, factors_path);
    if (dec->parsed()) return cmd_decompose(input_path, output_path, tol, als_refine, report_path);
    if (repro->parsed()) return cmd_repro_det(als_refine, report_path);
    if (mc->parsed())
      return cmd_monte_carlo(trials, dims_spec, seed, threshold, method, report_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}

}  // namespace paratuck2
