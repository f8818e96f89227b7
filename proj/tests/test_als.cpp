#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "paratuck2/als.hpp"
#include "paratuck2/experiments.hpp"
#include "paratuck2/linalg.hpp"
#include "paratuck2/rng.hpp"
#include "paratuck2/solver.hpp"
#include "support/oracles.hpp"

using namespace paratuck2;

namespace {

ParaTuck2Factors random_init(const Tensor3& T, std::uint64_t seed) {
  GaussianRng rng(seed);
  return {rng.normal_matrix(T.dim1(), 2), rng.normal_matrix(T.dim2(), 2), rng.normal_matrix(2, 2),
          rng.normal_matrix(2, T.dim3()), rng.normal_matrix(2, T.dim3())};
}

}  // namespace

TEST_CASE("ground truth is a fixed point of als_step") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto [f, T] = random_instance({4, 4, 10}, seed);
    const ParaTuck2Factors stepped = als_step(T, f);
    CHECK(frob_dist_sq(T, reconstruct(stepped)) <= 1e-18);
  }
}

TEST_CASE("one sweep from the algebraic solution decreases the reference residual") {
  const Tensor3 T = reference_tensor();
  const DecomposeResult res = decompose(T);
  const double before = res.diagnostics.residual_abs;
  const ParaTuck2Factors stepped = als_step(T, res.factors);
  const double after = frob_dist_sq(T, reconstruct(stepped));
  CHECK(after <= before + 1e-12);
}

TEST_CASE("als_step rejects mismatched dims") {
  const auto [f, T] = random_instance({4, 4, 10}, 4);
  const auto [g, U] = random_instance({4, 4, 11}, 5);
  CHECK_THROWS_AS(als_step(T, g), Error);
}

TEST_CASE("a full sweep is at least as good as the best manual single-factor update") {
  // Independent route: update only A by dense normal equations and compare.
  const auto [truth, T] = random_instance({4, 3, 10}, 6);
  const ParaTuck2Factors init = random_init(T, 7);

  const Index n2 = T.dim2(), n3 = T.dim3();
  Matrix lhs(n2 * n3, 2), rhs(n2 * n3, T.dim1());
  for (Index k = 0; k < n3; ++k) {
    const Matrix Dg = Vector(init.G.col(k)).asDiagonal();
    const Matrix Dh = Vector(init.H.col(k)).asDiagonal();
    const Matrix Mk = Dg * init.F * Dh * init.B.transpose();
    lhs.middleRows(k * n2, n2) = Mk.transpose();
    rhs.middleRows(k * n2, n2) = Matrix(T.slice(k)).transpose();
  }
  const Matrix An = (lhs.adjoint() * lhs).fullPivLu().solve(lhs.adjoint() * rhs).transpose();
  ParaTuck2Factors manual = init;
  manual.A = An;
  const double err_manual = frob_dist_sq(T, reconstruct(manual));

  const double err_sweep = frob_dist_sq(T, reconstruct(als_step(T, init)));
  CHECK(err_sweep <= err_manual + 1e-10 * frob_norm_sq(T));
}

TEST_CASE("traces are nonincreasing") {
  for (std::uint64_t seed : {10, 11, 12, 13}) {
    const auto [f, T] = random_instance({4, 4, 10}, seed);
    AlsOptions opts;
    opts.max_iters = 40;
    opts.seed = seed + 100;
    const auto [factors, trace] = als_run(T, opts);
    REQUIRE(!trace.errors.empty());
    for (std::size_t i = 1; i < trace.errors.size(); ++i) {
      CHECK(trace.errors[i] <= trace.errors[i - 1] + 1e-12);
    }
  }
}

TEST_CASE("truth-initialized runs converge within two sweeps") {
  const auto [f, T] = random_instance({5, 4, 11}, 14);
  const auto [factors, trace] = als_run(T, f);
  CHECK(trace.converged);
  CHECK(trace.iterations <= 2);
  CHECK(frob_dist_sq(T, reconstruct(factors)) <= 1e-18);
}

TEST_CASE("max_iters caps the trace length") {
  const auto [f, T] = random_instance({4, 4, 10}, 15);
  AlsOptions opts;
  opts.max_iters = 1;
  opts.seed = 9;
  const auto [factors, trace] = als_run(T, opts);
  CHECK(trace.errors.size() == 1);
  CHECK(trace.iterations == 1);

  AlsOptions bad;
  bad.max_iters = 0;
  CHECK_THROWS_AS(als_run(T, bad), Error);
}

TEST_CASE("refining the algebraic output by one sweep never increases the error") {
  for (std::uint64_t seed : {20, 21, 22}) {
    const auto [f, T] = random_instance({10, 10, 15}, seed);
    const DecomposeResult res = decompose(T);
    AlsOptions opts;
    opts.max_iters = 1;
    const auto [refined, trace] = als_run(T, res.factors, opts);
    CHECK(frob_dist_sq(T, reconstruct(refined)) <= res.diagnostics.residual_abs + 1e-12);
  }
}

TEST_CASE("rebalancing keeps the reconstruction and normalizes factor columns") {
  const auto [f, T] = random_instance({4, 4, 10}, 23);
  AlsOptions opts;
  opts.max_iters = 5;
  opts.seed = 24;
  opts.rebalance = true;
  const auto [factors, trace] = als_run(T, opts);
  for (Index c = 0; c < 2; ++c) {
    CHECK(factors.A.col(c).norm() == doctest::Approx(1.0));
    CHECK(factors.B.col(c).norm() == doctest::Approx(1.0));
  }
  for (std::size_t i = 1; i < trace.errors.size(); ++i) {
    CHECK(trace.errors[i] <= trace.errors[i - 1] + 1e-12);
  }
}

TEST_CASE("random initializations mostly hit local minima on the reference tensor") {
  const Tensor3 T = reference_tensor();
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    AlsOptions opts;
    opts.max_iters = 300;
    opts.seed = seed;
    const auto [factors, trace] = als_run(T, opts);
    if (trace.errors.back() < 1e-10) ++hits;
  }
  CHECK(hits <= 5);  // qualitative: most runs stall far from the solution
}
