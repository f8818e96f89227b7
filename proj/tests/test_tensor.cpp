#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <vector>

#include "paratuck2/experiments.hpp"
#include "paratuck2/linalg.hpp"
#include "paratuck2/rng.hpp"
#include "paratuck2/tensor.hpp"
#include "support/oracles.hpp"

using namespace paratuck2;

namespace {

Tensor3 small_counting_tensor() {
  // slices [[1,3],[2,4]] and [[5,7],[6,8]]
  std::vector<Complex> data;
  for (int n = 1; n <= 8; ++n) data.emplace_back(n, 0.0);
  return Tensor3::from_data(2, 2, 2, data);
}

}  // namespace

TEST_CASE("slice returns the frontal slice in the documented layout") {
  Tensor3 T(2, 2, 1);
  T(0, 0, 0) = 1.0;
  T(1, 1, 0) = 1.0;
  CHECK(Matrix(T.slice(0)) == Matrix::Identity(2, 2));

  CHECK_THROWS_AS(T.slice(1), Error);
  CHECK_THROWS_AS(T.slice(-1), Error);
}

TEST_CASE("slices of the reference instance match the five-matrix product oracle") {
  const ParaTuck2Factors f = reference_factors();
  const Tensor3 T = reconstruct(f);
  for (Index k = 0; k < T.dim3(); ++k) {
    const Matrix expect = oracles::model_slice(f.A, f.B, f.F, f.G, f.H, k);
    CHECK((Matrix(T.slice(k)) - expect).norm() <= 1e-13 * expect.norm());
  }
}

TEST_CASE("contract with identity is the identity") {
  const Tensor3 T = small_counting_tensor();
  const Tensor3 R = contract(T, Matrix::Identity(2, 2), 1);
  CHECK(frob_dist_sq(T, R) == 0.0);
}

TEST_CASE("contract matches the naive triple loop and the slice-product form") {
  GaussianRng rng(11);
  Tensor3 T(3, 4, 5);
  for (Index n = 0; n < T.size(); ++n) T.data()[n] = Complex(rng.normal(), rng.normal());
  const Matrix M1 = rng.complex_normal_matrix(6, 3);
  const Matrix M2 = rng.complex_normal_matrix(2, 4);

  const Tensor3 C1 = contract(T, M1, 1);
  const Tensor3 C1_oracle = oracles::contract_naive(T, M1, 1);
  CHECK(frob_dist_sq(C1, C1_oracle) <= 1e-24 * frob_norm_sq(C1_oracle));

  const Tensor3 C2 = contract(T, M2, 2);
  const Tensor3 C2_oracle = oracles::contract_naive(T, M2, 2);
  CHECK(frob_dist_sq(C2, C2_oracle) <= 1e-24 * frob_norm_sq(C2_oracle));

  // x_1 then x_2 equals slice-by-slice M1 * T_k * M2^T.
  const Tensor3 both = contract(C1, M2, 2);
  for (Index k = 0; k < 5; ++k) {
    const Matrix expect = M1 * Matrix(T.slice(k)) * M2.transpose();
    CHECK((Matrix(both.slice(k)) - expect).norm() <= 1e-12 * expect.norm());
  }
}

TEST_CASE("contract rejects mismatched dims") {
  const Tensor3 T = small_counting_tensor();
  CHECK_THROWS_AS(contract(T, Matrix::Identity(3, 3), 1), Error);
  CHECK_THROWS_AS(contract(T, Matrix::Identity(2, 2), 3), Error);
}

TEST_CASE("contraction order does not matter") {
  GaussianRng rng(12);
  Tensor3 T(4, 3, 6);
  for (Index n = 0; n < T.size(); ++n) T.data()[n] = Complex(rng.normal(), rng.normal());
  const Matrix M = rng.complex_normal_matrix(2, 4);
  const Matrix N = rng.complex_normal_matrix(5, 3);
  const Tensor3 a = contract(contract(T, M, 1), N, 2);
  const Tensor3 b = contract(contract(T, N, 2), M, 1);
  CHECK(frob_dist_sq(a, b) <= 1e-24 * frob_norm_sq(a));
}

TEST_CASE("unfold layouts are fixed") {
  const Tensor3 T = small_counting_tensor();
  Matrix u1(2, 4);
  u1 << 1, 3, 5, 7, 2, 4, 6, 8;
  CHECK(unfold(T, 1) == u1);

  Matrix u2(2, 4);
  u2 << 1, 2, 5, 6, 3, 4, 7, 8;
  CHECK(unfold(T, 2) == u2);

  CHECK_THROWS_AS(unfold(T, 0), Error);
}

TEST_CASE("unfold of a rank-one tensor has rank one") {
  GaussianRng rng(13);
  const Vector a = rng.complex_normal_matrix(4, 1);
  const Vector b = rng.complex_normal_matrix(3, 1);
  const Vector c = rng.complex_normal_matrix(5, 1);
  Tensor3 T(4, 3, 5);
  for (Index k = 0; k < 5; ++k) T.set_slice(k, Matrix(c(k) * a * b.transpose()));
  const auto sv = compact_svd(unfold(T, 1)).sigma;
  CHECK(sv(1) <= 1e-13 * sv(0));
}

TEST_CASE("random instance unfoldings have numerical rank 2") {
  const auto [f, T] = random_instance({10, 10, 15}, 20260810);
  for (int mode : {1, 2}) {
    const auto sv = compact_svd(unfold(T, mode)).sigma;
    CHECK(sv(1) > 1e-6 * sv(0));
    CHECK(sv(2) <= 1e-12 * sv(0));
  }
}

TEST_CASE("unfold interchanges with mode-1 contraction") {
  GaussianRng rng(14);
  Tensor3 T(3, 4, 6);
  for (Index n = 0; n < T.size(); ++n) T.data()[n] = Complex(rng.normal(), rng.normal());
  const Matrix M = rng.complex_normal_matrix(5, 3);
  const Matrix lhs = unfold(contract(T, M, 1), 1);
  const Matrix rhs = M * unfold(T, 1);
  CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
}

TEST_CASE("frob_dist_sq basics") {
  const Tensor3 T = small_counting_tensor();
  CHECK(frob_dist_sq(T, T) == 0.0);

  Tensor3 ones(2, 2, 10), zeros(2, 2, 10);
  for (Index n = 0; n < ones.size(); ++n) ones.data()[n] = 1.0;
  CHECK(frob_dist_sq(ones, zeros) == doctest::Approx(40.0));

  Tensor3 other(2, 2, 3);
  CHECK_THROWS_AS(frob_dist_sq(T, other), Error);
}

TEST_CASE("frob_dist_sq is symmetric and positive on distinct input") {
  GaussianRng rng(15);
  Tensor3 T(3, 3, 4), U(3, 3, 4);
  for (Index n = 0; n < T.size(); ++n) {
    T.data()[n] = Complex(rng.normal(), rng.normal());
    U.data()[n] = Complex(rng.normal(), rng.normal());
  }
  CHECK(frob_dist_sq(T, U) == frob_dist_sq(U, T));
  CHECK(frob_dist_sq(T, U) > 0.0);
}

TEST_CASE("decompose round-trips the reference tensor") {
  const Tensor3 T = reference_tensor();
  const DecomposeResult res = decompose(T);
  CHECK(frob_dist_sq(T, reconstruct(res.factors)) <= 1e-18);
}

TEST_CASE("from_data validates length and finiteness") {
  CHECK_THROWS_AS(Tensor3::from_data(2, 2, 2, std::vector<Complex>(7)), Error);
  std::vector<Complex> bad(8, Complex(0, 0));
  bad[3] = Complex(std::numeric_limits<double>::quiet_NaN(), 0);
  CHECK_THROWS_AS(Tensor3::from_data(2, 2, 2, bad), Error);
}
