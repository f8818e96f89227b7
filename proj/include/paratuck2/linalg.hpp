#pragma once

#include <Eigen/Dense>
#include <utility>

#include "paratuck2/tensor.hpp"

namespace paratuck2 {

/// Compact SVD M = U * diag(sigma) * V^H with min(rows, cols) triplets,
/// sigma nonincreasing and nonnegative, U and V with orthonormal columns.
struct SvdResult {
  Matrix U;
  Eigen::VectorXd sigma;
  Matrix V;
};

SvdResult compact_svd(const Matrix& M);

/// Leading SVD truncation M ~ sigma * u * v^H with unit-norm u, v.
struct Rank1 {
  double sigma = 0.0;
  Vector u;
  Vector v;
  /// sigma_2 / sigma_1 of the input, 0 when the input has a single singular
  /// value. Callers use it to decide whether the input really was rank-one.
  double residual_ratio = 0.0;
};

Rank1 best_rank1(const Matrix& M);

/// Left singular vector of the smallest singular value of a 10-row matrix,
/// with the spectral-gap diagnostic sigma_9 / max(sigma_10, tiny).
struct SmallestLeftSingular {
  Vector theta;       // unit norm, satisfies ||theta^H M|| = sigma_min
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double gap = 0.0;   // sigma_9 / max(sigma_10, tiny)
};

SmallestLeftSingular smallest_left_singular_vector(const Matrix& M);

/// Exact 2x2 inverse. Throws SingularRecovery-grade numerics as a
/// singularity error when |det| <= 1e-14 * ||M||_F^2.
Matrix invert_2x2(const Matrix& M);

/// A root of a quadratic in the projective sense: the point at infinity
/// appears when the leading coefficient vanishes.
struct ProjectiveRoot {
  bool infinite = false;
  Complex value{0.0, 0.0};  // meaningful only when finite

  static ProjectiveRoot at_infinity() { return {true, Complex(0, 0)}; }
  static ProjectiveRoot finite(Complex v) { return {false, v}; }
};

/// Roots of c0 + c1 t + c2 t^2, allowing projective roots. A coefficient is
/// negligible below 1e-10 times the largest coefficient magnitude; if c2 is
/// negligible one root is infinite, if c1 and c2 both are, both roots are
/// infinite. Finite roots use the cancellation-safe branch (stable root
/// first, companion via c0/(c2 t1)). All three coefficients negligible
/// (below 1e-14 absolute) is a degenerate-polynomial error.
std::pair<ProjectiveRoot, ProjectiveRoot> projective_quadratic_roots(Complex c0, Complex c1,
                                                                     Complex c2);

/// Minimum-norm least-squares solution of M x = rhs (columnwise).
/// rank_deficient, when given, reports whether the system was singular.
Matrix lstsq(const Matrix& M, const Matrix& rhs, bool* rank_deficient = nullptr);

}  // namespace paratuck2
