#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "paratuck2/errors.hpp"

namespace paratuck2 {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Dense complex third-order tensor of shape N1 x N2 x N3.
///
/// Storage is slice-major: frontal slice k occupies a contiguous block of
/// N1*N2 entries, column-major within the slice. Entry (i,j,k) lives at
/// offset i + j*N1 + k*N1*N2. All indices are 0-based.
class Tensor3 {
 public:
  Tensor3() : n1_(0), n2_(0), n3_(0) {}

  /// Zero-filled tensor.
  Tensor3(Index n1, Index n2, Index n3);

  /// Wraps a flat buffer in the documented layout. Throws on length mismatch
  /// or non-finite entries.
  static Tensor3 from_data(Index n1, Index n2, Index n3, std::vector<Complex> data);

  Index dim1() const noexcept { return n1_; }
  Index dim2() const noexcept { return n2_; }
  Index dim3() const noexcept { return n3_; }
  Index size() const noexcept { return static_cast<Index>(data_.size()); }

  Complex& operator()(Index i, Index j, Index k) {
    return data_[static_cast<std::size_t>(i + j * n1_ + k * n1_ * n2_)];
  }
  Complex operator()(Index i, Index j, Index k) const {
    return data_[static_cast<std::size_t>(i + j * n1_ + k * n1_ * n2_)];
  }

  /// Contiguous N1 x N2 view of frontal slice k. Throws Argument when k is
  /// out of range.
  Eigen::Map<const Matrix> slice(Index k) const;
  Eigen::Map<Matrix> slice(Index k);

  void set_slice(Index k, const Matrix& s);

  const Complex* data() const noexcept { return data_.data(); }
  Complex* data() noexcept { return data_.data(); }

  bool same_dims(const Tensor3& other) const noexcept {
    return n1_ == other.n1_ && n2_ == other.n2_ && n3_ == other.n3_;
  }

 private:
  Index n1_, n2_, n3_;
  std::vector<Complex> data_;
};

/// Mode contraction: (T x_1 M)_{ijk} = sum_l T_{ljk} M_{il} and
/// (T x_2 M)_{ijk} = sum_l T_{ilk} M_{jl}. The contracted dimension is
/// replaced by M.rows(). mode is 1 or 2.
Tensor3 contract(const Tensor3& T, const Matrix& M, int mode);

/// Mode-1 unfolding is N1 x (N2*N3) with column j + k*N2; mode-2 is
/// N2 x (N1*N3) with column i + k*N1 (0-based).
Matrix unfold(const Tensor3& T, int mode);

/// Squared Frobenius distance sum |T_{ijk} - U_{ijk}|^2.
double frob_dist_sq(const Tensor3& T, const Tensor3& U);

/// Squared Frobenius norm of the tensor.
double frob_norm_sq(const Tensor3& T);

}  // namespace paratuck2
