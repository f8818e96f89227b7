#pragma once

// Brute-force reference implementations used to check the library. These
// deliberately avoid the library's own code paths: plain loops instead of
// contractions, and a hand-rolled Jacobi eigensolver instead of the SVD
// backend.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "paratuck2/model.hpp"
#include "paratuck2/rng.hpp"
#include "paratuck2/tensor.hpp"

namespace oracles {

using paratuck2::Complex;
using paratuck2::GaussianRng;
using paratuck2::Index;
using paratuck2::Matrix;
using paratuck2::ParaTuck2Factors;
using paratuck2::Tensor3;
using paratuck2::Vector;

/// Slice k of the model tensor as the literal five-matrix product
/// A * diag(G[:,k]) * F * diag(H[:,k]) * B^T, evaluated entry by entry.
inline Matrix model_slice(const Matrix& A, const Matrix& B, const Matrix& F, const Matrix& G,
                          const Matrix& H, Index k) {
  const Index n1 = A.rows(), n2 = B.rows(), r = A.cols(), s = B.cols();
  Matrix out = Matrix::Zero(n1, n2);
  for (Index i = 0; i < n1; ++i)
    for (Index j = 0; j < n2; ++j)
      for (Index p = 0; p < r; ++p)
        for (Index q = 0; q < s; ++q)
          out(i, j) += A(i, p) * G(p, k) * F(p, q) * H(q, k) * B(j, q);
  return out;
}

inline Tensor3 model_tensor(const ParaTuck2Factors& f) {
  Tensor3 T(f.n1(), f.n2(), f.n3());
  for (Index k = 0; k < f.n3(); ++k) T.set_slice(k, model_slice(f.A, f.B, f.F, f.G, f.H, k));
  return T;
}

/// Triple-loop mode contraction.
inline Tensor3 contract_naive(const Tensor3& T, const Matrix& M, int mode) {
  if (mode == 1) {
    Tensor3 out(M.rows(), T.dim2(), T.dim3());
    for (Index i = 0; i < M.rows(); ++i)
      for (Index j = 0; j < T.dim2(); ++j)
        for (Index k = 0; k < T.dim3(); ++k) {
          Complex acc(0, 0);
          for (Index l = 0; l < T.dim1(); ++l) acc += T(l, j, k) * M(i, l);
          out(i, j, k) = acc;
        }
    return out;
  }
  Tensor3 out(T.dim1(), M.rows(), T.dim3());
  for (Index i = 0; i < T.dim1(); ++i)
    for (Index j = 0; j < M.rows(); ++j)
      for (Index k = 0; k < T.dim3(); ++k) {
        Complex acc(0, 0);
        for (Index l = 0; l < T.dim2(); ++l) acc += T(i, l, k) * M(j, l);
        out(i, j, k) = acc;
      }
  return out;
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations (dephase,
/// then a real 2x2 rotation), descending order. Small and slow on purpose.
inline std::vector<double> hermitian_eigenvalues(Matrix A) {
  const Index n = A.rows();
  const double scale = std::max(A.norm(), 1e-300);
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += std::norm(A(p, q));
    if (std::sqrt(off) < 1e-15 * scale) break;
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double r = std::abs(A(p, q));
        if (r < 1e-300) continue;
        const Complex phase = A(p, q) / r;
        const double tau = (A(q, q).real() - A(p, p).real()) / (2.0 * r);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        Matrix J = Matrix::Identity(n, n);
        J(p, p) = c;
        J(p, q) = s;
        J(q, p) = -s * std::conj(phase);
        J(q, q) = c * std::conj(phase);
        A = (J.adjoint() * A * J).eval();
      }
    }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = A(i, i).real();
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

/// Singular values via the eigenvalues of M^H M, descending.
inline std::vector<double> singular_values_via_gram(const Matrix& M) {
  std::vector<double> ev = hermitian_eigenvalues(Matrix(M.adjoint() * M));
  for (double& v : ev) v = std::sqrt(std::max(v, 0.0));
  return ev;
}

/// Rank-(2,2) instance with genuinely complex factor entries.
inline std::pair<ParaTuck2Factors, Tensor3> complex_instance(paratuck2::Dims3 dims,
                                                             std::uint64_t seed) {
  GaussianRng rng(seed);
  ParaTuck2Factors f(rng.complex_normal_matrix(dims.n1, 2), rng.complex_normal_matrix(dims.n2, 2),
                     rng.complex_normal_matrix(2, 2), rng.complex_normal_matrix(2, dims.n3),
                     rng.complex_normal_matrix(2, dims.n3));
  Tensor3 T = paratuck2::reconstruct(f);
  return {std::move(f), std::move(T)};
}

/// A 2 x 2 x 14 tensor that is NOT a rank-(2,2) model tensor but whose
/// structured 10 x 14 matrix still has a one-dimensional left kernel: the
/// slices are solved onto a quadric that is a product of two hyperplanes
/// sharing the left rank-one factor. Decomposition recovers a coincident
/// generator pair from it, so it must fail with a singular-recovery error.
inline Tensor3 coincident_generator_tensor(std::uint64_t seed) {
  GaussianRng rng(seed);
  const Complex alpha(0.8, 0.3);
  Vector atilde(2), btilde1(2), btilde2(2);
  atilde << -alpha, Complex(1.0, 0.0);
  btilde1 << Complex(-1.3, 0.2), Complex(1.0, 0.0);
  btilde2 << Complex(2.1, -0.4), Complex(-1.0, 0.0);

  const Matrix U = atilde * btilde1.transpose();
  const Matrix V = atilde * btilde2.transpose();
  // Quadratic-form normals in vec order (t1, t2, t3, t4) = column-major.
  Vector normals[2] = {Eigen::Map<const Vector>(U.data(), 4),
                       Eigen::Map<const Vector>(V.data(), 4)};

  const Index n3 = 14;
  Tensor3 T(2, 2, n3);
  for (Index k = 0; k < n3; ++k) {
    const Vector& nrm = normals[k < n3 / 2 ? 0 : 1];
    Index pivot = 0;
    for (Index i = 1; i < 4; ++i)
      if (std::abs(nrm(i)) > std::abs(nrm(pivot))) pivot = i;
    Vector m(4);
    for (Index i = 0; i < 4; ++i)
      m(i) = Complex(rng.normal(), rng.normal());
    Complex acc(0, 0);
    for (Index i = 0; i < 4; ++i)
      if (i != pivot) acc += nrm(i) * m(i);
    m(pivot) = -acc / nrm(pivot);
    Matrix slice = Eigen::Map<const Matrix>(m.data(), 2, 2);
    T.set_slice(k, slice);
  }
  return T;
}

}  // namespace oracles
