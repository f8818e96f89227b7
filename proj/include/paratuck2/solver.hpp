#pragma once

#include <optional>
#include <utility>

#include "paratuck2/linalg.hpp"
#include "paratuck2/model.hpp"
#include "paratuck2/tensor.hpp"

namespace paratuck2 {

/// Orthogonal compression of T to a 2 x 2 x N3 core: Ac and Bc hold the two
/// leading left singular vectors of the mode-1 and mode-2 unfoldings, and
/// Tc = T x_1 Ac^H x_2 Bc^H. The sigma_3/sigma_2 ratios of both unfoldings
/// are kept as rank diagnostics (0 when the unfolding has only 2 rows).
struct CompressedTensor {
  Tensor3 Tc;
  Matrix Ac;
  Matrix Bc;
  double mode1_rank_ratio = 0.0;
  double mode2_rank_ratio = 0.0;
};

CompressedTensor hosvd_compress(const Tensor3& T);

/// Degree-2 monomial vector of a 2x2 matrix, entries named t1 = M(0,0),
/// t2 = M(1,0), t3 = M(0,1), t4 = M(1,1):
/// [t1^2, t2^2, t3^2, t4^2, t1t2, t1t3, t1t4, t2t3, t2t4, t3t4].
Vector veronese_phi(const Matrix& M);

/// Symmetric bilinear companion of veronese_phi on two 2x2 matrices:
/// [u1v1, u2v2, u3v3, u4v4, u1v2+u2v1, u1v3+u3v1, u1v4+u4v1, u2v3+u3v2,
///  u2v4+u4v2, u3v4+u4v3].
Vector theta_map(const Matrix& U, const Matrix& V);

/// 10 x N3 matrix whose column k is veronese_phi of frontal slice k.
/// Requires a 2 x 2 x N3 tensor with N3 >= 10 (underdetermined otherwise).
Matrix build_phi_matrix(const Tensor3& Tc);

/// Kernel vector of the 10 x N3 structured matrix with diagnostics. theta is
/// unit norm and satisfies ||theta^T Phi|| = sigma_min exactly (for complex
/// data this is the conjugate of the smallest left singular vector, since the
/// kernel condition is transpose-bilinear, not Hermitian).
struct ThetaVector {
  Vector theta;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double gap = 0.0;               // sigma_9 / sigma_10
  bool ambiguous_kernel = false;  // gap < 10
};

ThetaVector extract_theta(const Matrix& Phi);

/// Symmetric 4x4 matrix of the quadratic form with coefficient vector theta:
/// diagonal (t1..t4), off-diagonals t5..t10 halved.
Matrix m_matrix(const Vector& theta);

/// The fixed linear reduction 4x4 -> 3x3 (row/column combination of the
/// rearranged entries).
Matrix s_reduce(const Matrix& M4);

/// Direct form of s_reduce(m_matrix(theta)):
/// [[t1, t6, t3], [t5, t7+t8, t10], [t2, t9, t4]].
Matrix sm_matrix(const Vector& theta);

/// Projective root pairs encoding the rows of the inverse factors. The pairs
/// (alpha1, alpha2) and (beta1, beta2) are unordered.
struct GeneratorPairs {
  ProjectiveRoot alpha1, alpha2, beta1, beta2;
  double rank1_ratio = 0.0;  // sigma_2/sigma_1 of the reduced 3x3 matrix
};

/// Rank-one factorization of the reduced 3x3 matrix followed by quadratic
/// root extraction. Throws NotRankOne when sigma_2/sigma_1 > rank1_tol.
GeneratorPairs recover_generators(const Matrix& S3, double rank1_tol = 1e-6);

/// Columns [1; alpha] for finite generators, [0; 1] for infinite ones.
/// Coincident pairs (or two infinite roots) make A/B unidentifiable and
/// throw SingularRecovery.
std::pair<Matrix, Matrix> assemble_AB(const GeneratorPairs& g);

/// C = Tc x_1 inv(Aprime) x_2 inv(Bprime).
Tensor3 recover_core(const Tensor3& Tc, const Matrix& Aprime, const Matrix& Bprime);

/// Factors (F, G, H) of a 2 x 2 x N3 core tensor via elementwise slice
/// ratios: F is the pivot slice, G[:,k], H[:,k] come from the rank-one
/// factorization of slice k divided by the pivot slice (balanced sqrt(sigma)
/// scale split). The pivot maximizes the smallest entry magnitude and is
/// reported; G and H get all-ones columns at the pivot.
struct CoreFactors {
  Matrix F, G, H;
  Index pivot = 0;
  double worst_rank1_ratio = 0.0;  // max over k of sigma_2/sigma_1 of the ratio slices
};

CoreFactors extract_core_factors(const Tensor3& C, double rank1_tol = 1e-6);

/// 2 x N3 matrix of diagonal/antidiagonal entry products of core slices
/// [[w_k z_k], [x_k y_k]]; rank <= 1 exactly on model cores.
Matrix psi_matrix(const Tensor3& C);

/// Largest normalized violation of the implicit core equations
/// C_{11k} C_{22k} C_{12r} C_{21r} - C_{12k} C_{21k} C_{11r} C_{22r} = 0
/// over all slice pairs (k, r), scaled by the fourth power of the largest
/// entry magnitude.
double core_residual(const Tensor3& C);

struct DecomposeOptions {
  /// Alternating-least-squares refinement sweeps applied after the algebraic
  /// pipeline (0 disables refinement).
  int als_iters = 0;
  /// When set, enables verify mode: the kernel ratio must pass kernel_tol
  /// and the final residual (squared Frobenius) must not exceed this value,
  /// otherwise a NotDecomposable error carrying the best-effort factors is
  /// thrown.
  std::optional<double> verify_tol;
  double rank1_tol = 1e-6;
  double kernel_tol = 1e-8;
};

struct DecompositionDiagnostics {
  double mode1_rank_ratio = 0.0;  // sigma_3/sigma_2, mode-1 unfolding
  double mode2_rank_ratio = 0.0;  // sigma_3/sigma_2, mode-2 unfolding
  double kernel_ratio = 0.0;      // sigma_10/sigma_1 of Phi
  double kernel_gap = 0.0;        // sigma_9/sigma_10 of Phi
  bool ambiguous_kernel = false;
  double rank1_ratio = 0.0;       // sigma_2/sigma_1 of the reduced 3x3 matrix
  double core_rank1_ratio = 0.0;  // worst ratio-slice sigma_2/sigma_1
  GeneratorPairs generators;
  Index pivot = 0;
  double residual_abs = 0.0;            // squared Frobenius, after refinement if any
  double residual_rel = 0.0;
  double residual_abs_unrefined = 0.0;  // before ALS refinement
  int als_iters_run = 0;
};

struct DecomposeResult {
  ParaTuck2Factors factors;
  DecompositionDiagnostics diagnostics;
};

/// Thrown in verify mode when the reconstruction residual (or the kernel
/// ratio) fails the configured bound; carries the factors found so far.
class NotDecomposableError : public Error {
 public:
  NotDecomposableError(std::string stage, const std::string& message,
                       std::optional<DecomposeResult> best_effort = std::nullopt)
      : Error(ErrorKind::NotDecomposable, std::move(stage), message),
        best_effort_(std::move(best_effort)) {}

  const std::optional<DecomposeResult>& best_effort() const noexcept { return best_effort_; }

 private:
  std::optional<DecomposeResult> best_effort_;
};

/// The complete algebraic pipeline: compression, structured-matrix kernel,
/// generator recovery, core factorization, optional ALS refinement. Stage
/// errors propagate with their stage tag.
DecomposeResult decompose(const Tensor3& T, const DecomposeOptions& opts = {});

}  // namespace paratuck2
