#include "paratuck2/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace paratuck2 {

namespace {

constexpr double kInfinityRatio = 1e-10;   // coefficient negligibility for projective roots
constexpr double kDegenerateAbs = 1e-14;   // all-coefficients-negligible cutoff

Eigen::JacobiSVD<Matrix> run_jacobi_svd(const Matrix& M, unsigned options) {
  Eigen::JacobiSVD<Matrix> svd(M, options);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "svd",
                "SVD backend did not converge on a " + std::to_string(M.rows()) + "x" +
                    std::to_string(M.cols()) + " matrix");
  }
  return svd;
}

}  // namespace

SvdResult compact_svd(const Matrix& M) {
  if (M.size() == 0) {
    throw Error(ErrorKind::Argument, "compact_svd", "empty matrix");
  }
  auto svd = run_jacobi_svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Rank1 best_rank1(const Matrix& M) {
  SvdResult s = compact_svd(M);
  Rank1 r;
  r.sigma = s.sigma(0);
  r.u = s.U.col(0);
  r.v = s.V.col(0);
  if (s.sigma.size() > 1 && s.sigma(0) > 0.0) {
    r.residual_ratio = s.sigma(1) / s.sigma(0);
  }
  return r;
}

SmallestLeftSingular smallest_left_singular_vector(const Matrix& M) {
  if (M.rows() != 10) {
    throw Error(ErrorKind::Argument, "smallest_left_singular_vector",
                "expected 10 rows, got " + std::to_string(M.rows()));
  }
  if (M.cols() < 10) {
    throw Error(ErrorKind::Argument, "smallest_left_singular_vector",
                "need at least 10 columns for a meaningful left kernel, got " +
                    std::to_string(M.cols()));
  }
  SvdResult s = compact_svd(M);
  SmallestLeftSingular out;
  out.theta = s.U.col(9);
  out.sigma_min = s.sigma(9);
  out.sigma_max = s.sigma(0);
  out.gap = s.sigma(8) / std::max(s.sigma(9), 1e-300);
  return out;
}

Matrix invert_2x2(const Matrix& M) {
  if (M.rows() != 2 || M.cols() != 2) {
    throw Error(ErrorKind::Argument, "invert_2x2", "matrix is not 2x2");
  }
  const Complex det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  const double scale = M.squaredNorm();
  if (std::abs(det) <= 1e-14 * scale) {
    throw Error(ErrorKind::SingularRecovery, "invert_2x2",
                "2x2 matrix is singular (|det| = " + std::to_string(std::abs(det)) + ")");
  }
  Matrix inv(2, 2);
  inv << M(1, 1), -M(0, 1), -M(1, 0), M(0, 0);
  inv /= det;
  return inv;
}

std::pair<ProjectiveRoot, ProjectiveRoot> projective_quadratic_roots(Complex c0, Complex c1,
                                                                     Complex c2) {
  const double m0 = std::abs(c0), m1 = std::abs(c1), m2 = std::abs(c2);
  const double scale = std::max({m0, m1, m2});
  if (scale <= kDegenerateAbs) {
    throw Error(ErrorKind::DegeneratePolynomial, "projective_quadratic_roots",
                "all quadratic coefficients negligible");
  }
  if (m2 <= kInfinityRatio * scale) {
    if (m1 <= kInfinityRatio * scale) {
      // Constant polynomial: both roots at infinity.
      return {ProjectiveRoot::at_infinity(), ProjectiveRoot::at_infinity()};
    }
    // Linear: c0 + c1 t, one finite root and one at infinity.
    return {ProjectiveRoot::finite(-c0 / c1), ProjectiveRoot::at_infinity()};
  }
  // Stable quadratic: q = -(c1 + s*sqrt(disc))/2 with the sign s chosen to
  // avoid cancellation; roots t1 = q/c2, t2 = c0/q.
  const Complex disc = c1 * c1 - 4.0 * c2 * c0;
  const Complex sq = std::sqrt(disc);
  const Complex q = (std::abs(c1 + sq) >= std::abs(c1 - sq)) ? -0.5 * (c1 + sq) : -0.5 * (c1 - sq);
  if (std::abs(q) <= kDegenerateAbs * scale) {
    // c1 ~ 0 and disc ~ 0: double root at 0.
    return {ProjectiveRoot::finite(Complex(0, 0)), ProjectiveRoot::finite(Complex(0, 0))};
  }
  return {ProjectiveRoot::finite(q / c2), ProjectiveRoot::finite(c0 / q)};
}

Matrix lstsq(const Matrix& M, const Matrix& rhs, bool* rank_deficient) {
  if (M.rows() != rhs.rows()) {
    throw Error(ErrorKind::Argument, "lstsq", "row count mismatch");
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(M);
  if (rank_deficient != nullptr) {
    *rank_deficient = cod.rank() < M.cols();
  }
  return cod.solve(rhs);
}

}  // namespace paratuck2
