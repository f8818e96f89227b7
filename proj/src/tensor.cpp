#include "paratuck2/tensor.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace paratuck2 {

namespace {

bool all_finite(const std::vector<Complex>& data) {
  for (const Complex& z : data) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void check_positive_dims(Index n1, Index n2, Index n3) {
  if (n1 <= 0 || n2 <= 0 || n3 <= 0) {
    throw Error(ErrorKind::Argument, "tensor",
                "dims must be positive, got (" + std::to_string(n1) + "," + std::to_string(n2) +
                    "," + std::to_string(n3) + ")");
  }
}

}  // namespace

Tensor3::Tensor3(Index n1, Index n2, Index n3) : n1_(n1), n2_(n2), n3_(n3) {
  check_positive_dims(n1, n2, n3);
  data_.assign(static_cast<std::size_t>(n1 * n2 * n3), Complex(0.0, 0.0));
}

Tensor3 Tensor3::from_data(Index n1, Index n2, Index n3, std::vector<Complex> data) {
  check_positive_dims(n1, n2, n3);
  if (static_cast<Index>(data.size()) != n1 * n2 * n3) {
    throw Error(ErrorKind::Argument, "tensor",
                "data length " + std::to_string(data.size()) + " does not match dims product " +
                    std::to_string(n1 * n2 * n3));
  }
  if (!all_finite(data)) {
    throw Error(ErrorKind::Argument, "tensor", "non-finite entry in tensor data");
  }
  Tensor3 t;
  t.n1_ = n1;
  t.n2_ = n2;
  t.n3_ = n3;
  t.data_ = std::move(data);
  return t;
}

Eigen::Map<const Matrix> Tensor3::slice(Index k) const {
  if (k < 0 || k >= n3_) {
    throw Error(ErrorKind::Argument, "slice",
                "slice index " + std::to_string(k) + " out of range [0," + std::to_string(n3_) + ")");
  }
  return {data_.data() + k * n1_ * n2_, n1_, n2_};
}

Eigen::Map<Matrix> Tensor3::slice(Index k) {
  if (k < 0 || k >= n3_) {
    throw Error(ErrorKind::Argument, "slice",
                "slice index " + std::to_string(k) + " out of range [0," + std::to_string(n3_) + ")");
  }
  return {data_.data() + k * n1_ * n2_, n1_, n2_};
}

void Tensor3::set_slice(Index k, const Matrix& s) {
  if (s.rows() != n1_ || s.cols() != n2_) {
    throw Error(ErrorKind::Argument, "slice", "slice shape mismatch");
  }
  slice(k) = s;
}

Tensor3 contract(const Tensor3& T, const Matrix& M, int mode) {
  if (mode != 1 && mode != 2) {
    throw Error(ErrorKind::Argument, "contract", "mode must be 1 or 2");
  }
  if (mode == 1) {
    if (M.cols() != T.dim1()) {
      throw Error(ErrorKind::Argument, "contract",
                  "mode-1 contraction needs M.cols == N1, got " + std::to_string(M.cols()) +
                      " vs " + std::to_string(T.dim1()));
    }
    Tensor3 out(M.rows(), T.dim2(), T.dim3());
    for (Index k = 0; k < T.dim3(); ++k) out.slice(k) = M * T.slice(k);
    return out;
  }
  if (M.cols() != T.dim2()) {
    throw Error(ErrorKind::Argument, "contract",
                "mode-2 contraction needs M.cols == N2, got " + std::to_string(M.cols()) + " vs " +
                    std::to_string(T.dim2()));
  }
  Tensor3 out(T.dim1(), M.rows(), T.dim3());
  for (Index k = 0; k < T.dim3(); ++k) out.slice(k) = T.slice(k) * M.transpose();
  return out;
}

Matrix unfold(const Tensor3& T, int mode) {
  const Index n1 = T.dim1(), n2 = T.dim2(), n3 = T.dim3();
  if (mode == 1) {
    // The storage layout makes this a plain reshape.
    return Eigen::Map<const Matrix>(T.data(), n1, n2 * n3);
  }
  if (mode == 2) {
    Matrix out(n2, n1 * n3);
    for (Index k = 0; k < n3; ++k) {
      out.middleCols(k * n1, n1) = T.slice(k).transpose();
    }
    return out;
  }
  throw Error(ErrorKind::Argument, "unfold", "mode must be 1 or 2");
}

double frob_dist_sq(const Tensor3& T, const Tensor3& U) {
  if (!T.same_dims(U)) {
    throw Error(ErrorKind::Argument, "frob_dist_sq", "dims mismatch");
  }
  double acc = 0.0;
  const Complex* a = T.data();
  const Complex* b = U.data();
  for (Index n = 0; n < T.size(); ++n) acc += std::norm(a[n] - b[n]);
  return acc;
}

double frob_norm_sq(const Tensor3& T) {
  double acc = 0.0;
  const Complex* a = T.data();
  for (Index n = 0; n < T.size(); ++n) acc += std::norm(a[n]);
  return acc;
}

}  // namespace paratuck2
