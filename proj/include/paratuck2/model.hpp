#pragma once

#include <cstdint>
#include <utility>

#include "paratuck2/tensor.hpp"

namespace paratuck2 {

struct Dims3 {
  Index n1 = 0;
  Index n2 = 0;
  Index n3 = 0;
};

/// The factor quintuple (A, B, F, G, H): slice k of the modeled tensor is
/// A * diag(G[:,k]) * F * diag(H[:,k]) * B^T.
///
/// A is N1 x R, B is N2 x S, F is R x S, G is R x N3, H is S x N3. This
/// artifact fixes R = S = 2; the constructor enforces it along with finite
/// entries and mutually consistent dims.
struct ParaTuck2Factors {
  Matrix A, B, F, G, H;

  ParaTuck2Factors() = default;
  ParaTuck2Factors(Matrix A_, Matrix B_, Matrix F_, Matrix G_, Matrix H_);

  Index n1() const noexcept { return A.rows(); }
  Index n2() const noexcept { return B.rows(); }
  Index n3() const noexcept { return G.cols(); }
  Index rank_r() const noexcept { return A.cols(); }
  Index rank_s() const noexcept { return B.cols(); }
};

/// Core tensor C with C_{ijk} = F_{ij} * G_{ik} * H_{jk}, shape R x S x N3.
Tensor3 core_from_factors(const Matrix& F, const Matrix& G, const Matrix& H);

/// T = C x_1 A x_2 B with C = core_from_factors(F, G, H). Works for any
/// consistent (R, S), not just (2, 2).
Tensor3 reconstruct(const Matrix& A, const Matrix& B, const Matrix& F, const Matrix& G,
                    const Matrix& H);

Tensor3 reconstruct(const ParaTuck2Factors& f);

/// Rank-(2,2) instance with i.i.d. standard normal real factor entries from
/// the seeded generator (fill order A, B, F, G, H, column-major). Requires
/// N1, N2 >= 2 and N3 >= 10.
std::pair<ParaTuck2Factors, Tensor3> random_instance(Dims3 dims, std::uint64_t seed);

/// frob_dist_sq(T, That) / max(frob_norm_sq(T), tiny).
double relative_error(const Tensor3& T, const Tensor3& That);

}  // namespace paratuck2
