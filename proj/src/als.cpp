#include "paratuck2/als.hpp"

#include <algorithm>
#include <cmath>

#include "paratuck2/linalg.hpp"
#include "paratuck2/rng.hpp"

namespace paratuck2 {

namespace {

// vec(M) column-major.
Vector vec(const Matrix& M) { return Eigen::Map<const Vector>(M.data(), M.size()); }

Matrix diag_col(const Matrix& M, Index k) { return Vector(M.col(k)).asDiagonal(); }

// Columnwise Kronecker product: column r is kron(L.col(r), R.col(r)).
Matrix khatri_rao(const Matrix& L, const Matrix& R) {
  Matrix out(L.rows() * R.rows(), L.cols());
  for (Index c = 0; c < L.cols(); ++c) {
    for (Index i = 0; i < L.rows(); ++i) {
      out.col(c).segment(i * R.rows(), R.rows()) = L(i, c) * R.col(c);
    }
  }
  return out;
}

Matrix kron(const Matrix& L, const Matrix& R) {
  Matrix out(L.rows() * R.rows(), L.cols() * R.cols());
  for (Index i = 0; i < L.rows(); ++i)
    for (Index j = 0; j < L.cols(); ++j)
      out.block(i * R.rows(), j * R.cols(), R.rows(), R.cols()) = L(i, j) * R;
  return out;
}

void track(bool* flag, bool deficient) {
  if (flag != nullptr && deficient) *flag = true;
}

}  // namespace

ParaTuck2Factors als_step(const Tensor3& T, const ParaTuck2Factors& f, bool* rank_deficient) {
  if (T.dim1() != f.n1() || T.dim2() != f.n2() || T.dim3() != f.n3()) {
    throw Error(ErrorKind::Argument, "als_step", "tensor and factor dims mismatch");
  }
  const Index n1 = T.dim1(), n2 = T.dim2(), n3 = T.dim3();
  const Index r = f.rank_r(), s = f.rank_s();
  Matrix A = f.A, B = f.B, F = f.F, G = f.G, H = f.H;
  bool deficient = false;

  // A: stack M_k = D_k(G) F D_k(H) B^T horizontally and solve A [M_1...] = [T_1...].
  {
    Matrix lhs(n2 * n3, r);   // transposed stacks
    Matrix rhs(n2 * n3, n1);
    for (Index k = 0; k < n3; ++k) {
      const Matrix Mk = diag_col(G, k) * F * diag_col(H, k) * B.transpose();
      lhs.middleRows(k * n2, n2) = Mk.transpose();
      rhs.middleRows(k * n2, n2) = T.slice(k).transpose();
    }
    bool d = false;
    A = lstsq(lhs, rhs, &d).transpose();
    deficient |= d;
  }

  // F: stack vec(T_k) = (B D_k(H) kron A D_k(G)) vec(F).
  {
    Matrix lhs(n1 * n2 * n3, r * s);
    Vector rhs(n1 * n2 * n3);
    for (Index k = 0; k < n3; ++k) {
      lhs.middleRows(k * n1 * n2, n1 * n2) = kron(B * diag_col(H, k), A * diag_col(G, k));
      rhs.segment(k * n1 * n2, n1 * n2) = vec(T.slice(k));
    }
    bool d = false;
    const Vector fv = lstsq(lhs, rhs, &d);
    F = Eigen::Map<const Matrix>(fv.data(), r, s);
    deficient |= d;
  }

  // B: transposed slices give B N_k = T_k^T with N_k = D_k(H) F^T D_k(G) A^T.
  {
    Matrix lhs(n1 * n3, s);
    Matrix rhs(n1 * n3, n2);
    for (Index k = 0; k < n3; ++k) {
      const Matrix Nk = diag_col(H, k) * F.transpose() * diag_col(G, k) * A.transpose();
      lhs.middleRows(k * n1, n1) = Nk.transpose();
      rhs.middleRows(k * n1, n1) = T.slice(k);
    }
    bool d = false;
    B = lstsq(lhs, rhs, &d).transpose();
    deficient |= d;
  }

  // G: per slice, vec(T_k) = khatri_rao(W_k^T, A) g_k with W_k = F D_k(H) B^T.
  for (Index k = 0; k < n3; ++k) {
    const Matrix Wk = F * diag_col(H, k) * B.transpose();
    bool d = false;
    G.col(k) = lstsq(khatri_rao(Wk.transpose(), A), vec(T.slice(k)), &d);
    deficient |= d;
  }

  // H: per slice, vec(T_k) = khatri_rao(B, Z_k) h_k with Z_k = A D_k(G) F.
  for (Index k = 0; k < n3; ++k) {
    const Matrix Zk = A * diag_col(G, k) * F;
    bool d = false;
    H.col(k) = lstsq(khatri_rao(B, Zk), vec(T.slice(k)), &d);
    deficient |= d;
  }

  track(rank_deficient, deficient);
  return {std::move(A), std::move(B), std::move(F), std::move(G), std::move(H)};
}

namespace {

// Push factor column scales into G and H rows, leaving the slices unchanged.
void rebalance_factors(ParaTuck2Factors& f) {
  for (Index c = 0; c < 2; ++c) {
    const double na = f.A.col(c).norm();
    if (na > 0.0) {
      f.A.col(c) /= na;
      f.G.row(c) *= na;
    }
    const double nb = f.B.col(c).norm();
    if (nb > 0.0) {
      f.B.col(c) /= nb;
      f.H.row(c) *= nb;
    }
  }
}

}  // namespace

std::pair<ParaTuck2Factors, AlsTrace> als_run(const Tensor3& T, const ParaTuck2Factors& init,
                                              const AlsOptions& opts) {
  if (opts.max_iters < 1) {
    throw Error(ErrorKind::Argument, "als_run", "max_iters must be >= 1");
  }
  const double data_norm_sq = frob_norm_sq(T);
  AlsTrace trace;
  trace.errors.reserve(static_cast<std::size_t>(std::min(opts.max_iters, 65536)));

  ParaTuck2Factors current = init;
  ParaTuck2Factors best = init;
  double best_err = frob_dist_sq(T, reconstruct(init));
  double prev_err = best_err;

  for (int it = 0; it < opts.max_iters; ++it) {
    bool deficient = false;
    current = als_step(T, current, &deficient);
    trace.rank_deficient_step |= deficient;
    if (opts.rebalance) rebalance_factors(current);

    const double err = frob_dist_sq(T, reconstruct(current));
    trace.errors.push_back(err);
    trace.iterations = it + 1;
    if (err < best_err) {
      best_err = err;
      best = current;
    }
    if (prev_err - err <= opts.rel_tol * data_norm_sq) {
      trace.converged = true;
      break;
    }
    prev_err = err;
  }
  return {std::move(best), std::move(trace)};
}

std::pair<ParaTuck2Factors, AlsTrace> als_run(const Tensor3& T, const AlsOptions& opts) {
  GaussianRng rng(opts.seed);
  ParaTuck2Factors init(rng.normal_matrix(T.dim1(), 2), rng.normal_matrix(T.dim2(), 2),
                        rng.normal_matrix(2, 2), rng.normal_matrix(2, T.dim3()),
                        rng.normal_matrix(2, T.dim3()));
  return als_run(T, init, opts);
}

}  // namespace paratuck2
