#include "paratuck2/model.hpp"

#include <cmath>
#include <string>

#include "paratuck2/rng.hpp"

namespace paratuck2 {

namespace {

void require_finite(const Matrix& M, const char* name) {
  if (!M.allFinite()) {
    throw Error(ErrorKind::Argument, "factors", std::string("non-finite entry in ") + name);
  }
}

}  // namespace

ParaTuck2Factors::ParaTuck2Factors(Matrix A_, Matrix B_, Matrix F_, Matrix G_, Matrix H_)
    : A(std::move(A_)), B(std::move(B_)), F(std::move(F_)), G(std::move(G_)), H(std::move(H_)) {
  const Index r = A.cols(), s = B.cols();
  if (r != 2 || s != 2) {
    throw Error(ErrorKind::Argument, "factors",
                "rank (" + std::to_string(r) + "," + std::to_string(s) + ") unsupported, need (2,2)");
  }
  if (F.rows() != r || F.cols() != s || G.rows() != r || H.rows() != s || G.cols() != H.cols()) {
    throw Error(ErrorKind::Argument, "factors", "factor dims are mutually inconsistent");
  }
  if (A.rows() < 1 || B.rows() < 1 || G.cols() < 1) {
    throw Error(ErrorKind::Argument, "factors", "empty factor matrix");
  }
  require_finite(A, "A");
  require_finite(B, "B");
  require_finite(F, "F");
  require_finite(G, "G");
  require_finite(H, "H");
}

Tensor3 core_from_factors(const Matrix& F, const Matrix& G, const Matrix& H) {
  const Index r = F.rows(), s = F.cols(), n3 = G.cols();
  if (G.rows() != r || H.rows() != s || H.cols() != n3) {
    throw Error(ErrorKind::Argument, "core_from_factors", "factor dims are mutually inconsistent");
  }
  Tensor3 C(r, s, n3);
  for (Index k = 0; k < n3; ++k) {
    auto slice = C.slice(k);
    for (Index j = 0; j < s; ++j)
      for (Index i = 0; i < r; ++i) slice(i, j) = F(i, j) * G(i, k) * H(j, k);
  }
  return C;
}

Tensor3 reconstruct(const Matrix& A, const Matrix& B, const Matrix& F, const Matrix& G,
                    const Matrix& H) {
  if (A.cols() != F.rows() || B.cols() != F.cols()) {
    throw Error(ErrorKind::Argument, "reconstruct", "A/B rank does not match F");
  }
  const Tensor3 core = core_from_factors(F, G, H);
  return contract(contract(core, A, 1), B, 2);
}

Tensor3 reconstruct(const ParaTuck2Factors& f) { return reconstruct(f.A, f.B, f.F, f.G, f.H); }

std::pair<ParaTuck2Factors, Tensor3> random_instance(Dims3 dims, std::uint64_t seed) {
  if (dims.n1 < 2 || dims.n2 < 2) {
    throw Error(ErrorKind::Argument, "random_instance", "need N1, N2 >= 2");
  }
  if (dims.n3 < 10) {
    throw Error(ErrorKind::Underdetermined, "random_instance",
                "need N3 >= 10, got " + std::to_string(dims.n3));
  }
  GaussianRng rng(seed);
  Matrix A = rng.normal_matrix(dims.n1, 2);
  Matrix B = rng.normal_matrix(dims.n2, 2);
  Matrix F = rng.normal_matrix(2, 2);
  Matrix G = rng.normal_matrix(2, dims.n3);
  Matrix H = rng.normal_matrix(2, dims.n3);
  ParaTuck2Factors f(std::move(A), std::move(B), std::move(F), std::move(G), std::move(H));
  Tensor3 T = reconstruct(f);
  return {std::move(f), std::move(T)};
}

double relative_error(const Tensor3& T, const Tensor3& That) {
  const double denom = frob_norm_sq(T);
  return frob_dist_sq(T, That) / std::max(denom, 1e-300);
}

}  // namespace paratuck2
