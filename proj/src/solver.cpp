#include "paratuck2/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "paratuck2/als.hpp"

namespace paratuck2 {

namespace {

constexpr double kRankTol = 1e-13;  // sigma_2/sigma_1 cutoff for multilinear rank 2

void require_2x2(const Matrix& M, const char* op) {
  if (M.rows() != 2 || M.cols() != 2) {
    throw Error(ErrorKind::Argument, op, "matrix is not 2x2");
  }
}

void require_core_dims(const Tensor3& C, const char* op) {
  if (C.dim1() != 2 || C.dim2() != 2) {
    throw Error(ErrorKind::Argument, op, "core tensor is not 2 x 2 x N3");
  }
}

}  // namespace

CompressedTensor hosvd_compress(const Tensor3& T) {
  if (T.dim1() < 2 || T.dim2() < 2) {
    throw Error(ErrorKind::Argument, "compress", "need N1, N2 >= 2");
  }
  const SvdResult s1 = compact_svd(unfold(T, 1));
  const SvdResult s2 = compact_svd(unfold(T, 2));
  for (const SvdResult* s : {&s1, &s2}) {
    if (s->sigma(0) <= 0.0 || s->sigma(1) < kRankTol * s->sigma(0)) {
      throw Error(ErrorKind::RankDeficient, "compress",
                  "unfolding has rank < 2 (sigma_2/sigma_1 = " +
                      std::to_string(s->sigma(0) > 0.0 ? s->sigma(1) / s->sigma(0) : 0.0) + ")");
    }
  }
  CompressedTensor out;
  out.Ac = s1.U.leftCols(2);
  out.Bc = s2.U.leftCols(2);
  out.mode1_rank_ratio = s1.sigma.size() > 2 ? s1.sigma(2) / s1.sigma(1) : 0.0;
  out.mode2_rank_ratio = s2.sigma.size() > 2 ? s2.sigma(2) / s2.sigma(1) : 0.0;
  out.Tc = contract(contract(T, out.Ac.adjoint(), 1), out.Bc.adjoint(), 2);
  return out;
}

Vector veronese_phi(const Matrix& M) {
  require_2x2(M, "veronese_phi");
  const Complex t1 = M(0, 0), t2 = M(1, 0), t3 = M(0, 1), t4 = M(1, 1);
  Vector phi(10);
  phi << t1 * t1, t2 * t2, t3 * t3, t4 * t4, t1 * t2, t1 * t3, t1 * t4, t2 * t3, t2 * t4, t3 * t4;
  return phi;
}

Vector theta_map(const Matrix& U, const Matrix& V) {
  require_2x2(U, "theta_map");
  require_2x2(V, "theta_map");
  const Complex u1 = U(0, 0), u2 = U(1, 0), u3 = U(0, 1), u4 = U(1, 1);
  const Complex v1 = V(0, 0), v2 = V(1, 0), v3 = V(0, 1), v4 = V(1, 1);
  Vector th(10);
  th << u1 * v1, u2 * v2, u3 * v3, u4 * v4, u1 * v2 + u2 * v1, u1 * v3 + u3 * v1,
      u1 * v4 + u4 * v1, u2 * v3 + u3 * v2, u2 * v4 + u4 * v2, u3 * v4 + u4 * v3;
  return th;
}

Matrix build_phi_matrix(const Tensor3& Tc) {
  require_core_dims(Tc, "build_phi");
  const Index n3 = Tc.dim3();
  if (n3 < 10) {
    throw Error(ErrorKind::Underdetermined, "build_phi",
                "need N3 >= 10 for a meaningful left kernel, got " + std::to_string(n3));
  }
  Matrix Phi(10, n3);
  for (Index k = 0; k < n3; ++k) Phi.col(k) = veronese_phi(Tc.slice(k));
  return Phi;
}

ThetaVector extract_theta(const Matrix& Phi) {
  const SmallestLeftSingular s = smallest_left_singular_vector(Phi);
  ThetaVector out;
  // The kernel condition is theta^T Phi = 0 in the bilinear (transpose)
  // sense; the SVD vector satisfies u^H Phi ~ 0, so theta = conj(u).
  out.theta = s.theta.conjugate();
  out.sigma_min = s.sigma_min;
  out.sigma_max = s.sigma_max;
  out.gap = s.gap;
  out.ambiguous_kernel = s.gap < 10.0;
  return out;
}

Matrix m_matrix(const Vector& theta) {
  if (theta.size() != 10) {
    throw Error(ErrorKind::Argument, "m_matrix", "theta must have length 10");
  }
  const auto& t = theta;
  Matrix M(4, 4);
  M << t(0), t(4) / 2.0, t(5) / 2.0, t(6) / 2.0,  //
      t(4) / 2.0, t(1), t(7) / 2.0, t(8) / 2.0,   //
      t(5) / 2.0, t(7) / 2.0, t(2), t(9) / 2.0,   //
      t(6) / 2.0, t(8) / 2.0, t(9) / 2.0, t(3);
  return M;
}

Matrix s_reduce(const Matrix& M) {
  if (M.rows() != 4 || M.cols() != 4) {
    throw Error(ErrorKind::Argument, "s_reduce", "matrix is not 4x4");
  }
  Matrix mid(4, 4);
  mid << M(0, 0), M(2, 0), M(0, 2), M(2, 2),  //
      M(1, 0), M(3, 0), M(1, 2), M(3, 2),     //
      M(0, 1), M(2, 1), M(0, 3), M(2, 3),     //
      M(1, 1), M(3, 1), M(1, 3), M(3, 3);
  Matrix left = Matrix::Zero(3, 4);
  left(0, 0) = 1.0;
  left(1, 1) = 1.0;
  left(1, 2) = 1.0;
  left(2, 3) = 1.0;
  Matrix right = Matrix::Zero(4, 3);
  right(0, 0) = 1.0;
  right(1, 1) = 1.0;
  right(2, 1) = 1.0;
  right(3, 2) = 1.0;
  return left * mid * right;
}

Matrix sm_matrix(const Vector& theta) {
  if (theta.size() != 10) {
    throw Error(ErrorKind::Argument, "sm_matrix", "theta must have length 10");
  }
  const auto& t = theta;
  Matrix S(3, 3);
  S << t(0), t(5), t(2),          //
      t(4), t(6) + t(7), t(9),    //
      t(1), t(8), t(3);
  return S;
}

GeneratorPairs recover_generators(const Matrix& S3, double rank1_tol) {
  if (S3.rows() != 3 || S3.cols() != 3) {
    throw Error(ErrorKind::Argument, "generators", "matrix is not 3x3");
  }
  const Rank1 r = best_rank1(S3);
  if (r.residual_ratio > rank1_tol) {
    throw Error(ErrorKind::NotRankOne, "generators",
                "reduced matrix is not rank-one (sigma_2/sigma_1 = " +
                    std::to_string(r.residual_ratio) + ")");
  }
  GeneratorPairs g;
  g.rank1_ratio = r.residual_ratio;
  // The factorization is S3 ~ sigma * u * vbar^T with vbar = conj(v), and the
  // generating polynomials are c0 + c1 t + c2 t^2 over those coefficients.
  auto alphas = projective_quadratic_roots(r.u(0), r.u(1), r.u(2));
  const Vector vbar = r.v.conjugate();
  auto betas = projective_quadratic_roots(vbar(0), vbar(1), vbar(2));
  g.alpha1 = alphas.first;
  g.alpha2 = alphas.second;
  g.beta1 = betas.first;
  g.beta2 = betas.second;
  return g;
}

namespace {

Matrix generator_columns(const ProjectiveRoot& r1, const ProjectiveRoot& r2, const char* which) {
  if (r1.infinite && r2.infinite) {
    throw Error(ErrorKind::SingularRecovery, "assemble",
                std::string(which) + ": both generators at infinity");
  }
  if (!r1.infinite && !r2.infinite) {
    const double sep = std::abs(r1.value - r2.value);
    const double scale = std::max(std::abs(r1.value), std::abs(r2.value));
    if (sep <= 1e-10 * scale) {
      throw Error(ErrorKind::SingularRecovery, "assemble",
                  std::string(which) + ": coincident generators");
    }
  }
  Matrix M(2, 2);
  const ProjectiveRoot* roots[2] = {&r1, &r2};
  for (int c = 0; c < 2; ++c) {
    if (roots[c]->infinite) {
      M(0, c) = 0.0;
      M(1, c) = 1.0;
    } else {
      M(0, c) = 1.0;
      M(1, c) = roots[c]->value;
    }
  }
  return M;
}

}  // namespace

std::pair<Matrix, Matrix> assemble_AB(const GeneratorPairs& g) {
  Matrix Aprime = generator_columns(g.alpha1, g.alpha2, "alpha");
  Matrix Bprime = generator_columns(g.beta1, g.beta2, "beta");
  return {std::move(Aprime), std::move(Bprime)};
}

Tensor3 recover_core(const Tensor3& Tc, const Matrix& Aprime, const Matrix& Bprime) {
  require_core_dims(Tc, "recover_core");
  return contract(contract(Tc, invert_2x2(Aprime), 1), invert_2x2(Bprime), 2);
}

CoreFactors extract_core_factors(const Tensor3& C, double rank1_tol) {
  require_core_dims(C, "core_factors");
  const Index n3 = C.dim3();

  double max_entry = 0.0;
  for (Index n = 0; n < C.size(); ++n) max_entry = std::max(max_entry, std::abs(C.data()[n]));

  // Pivot slice: largest smallest-entry magnitude, so the elementwise
  // divisions below stay well scaled. A pivot with a (near-)zero entry is
  // unusable; if even the best candidate has one, no pivot exists at all.
  Index pivot = -1;
  double best_min = -1.0;
  for (Index r = 0; r < n3; ++r) {
    const double m = C.slice(r).cwiseAbs().minCoeff();
    if (m > best_min) {
      best_min = m;
      pivot = r;
    }
  }
  if (best_min <= 1e-12 * max_entry) {
    throw Error(ErrorKind::DegeneratePivot, "core_factors",
                "every candidate pivot slice has a near-zero entry (best min " +
                    std::to_string(best_min) + ")");
  }

  CoreFactors out;
  out.pivot = pivot;
  out.F = C.slice(pivot);
  out.G = Matrix::Ones(2, n3);
  out.H = Matrix::Ones(2, n3);
  const Matrix pivot_slice = C.slice(pivot);
  for (Index k = 0; k < n3; ++k) {
    if (k == pivot) continue;
    const Matrix X = C.slice(k).cwiseQuotient(pivot_slice);
    const Rank1 r = best_rank1(X);
    out.worst_rank1_ratio = std::max(out.worst_rank1_ratio, r.residual_ratio);
    if (r.residual_ratio > rank1_tol) {
      throw Error(ErrorKind::NotRankOne, "core_factors",
                  "ratio slice " + std::to_string(k) + " is not rank-one (sigma_2/sigma_1 = " +
                      std::to_string(r.residual_ratio) + ")");
    }
    // X = sigma * u * conj(v)^T; balanced scale split between G and H.
    const double root_sigma = std::sqrt(r.sigma);
    out.G.col(k) = root_sigma * r.u;
    out.H.col(k) = root_sigma * r.v.conjugate();
  }
  return out;
}

Matrix psi_matrix(const Tensor3& C) {
  require_core_dims(C, "psi_matrix");
  const Index n3 = C.dim3();
  Matrix psi(2, n3);
  for (Index k = 0; k < n3; ++k) {
    const auto s = C.slice(k);
    psi(0, k) = s(0, 0) * s(1, 1);  // w_k * z_k
    psi(1, k) = s(1, 0) * s(0, 1);  // x_k * y_k
  }
  return psi;
}

double core_residual(const Tensor3& C) {
  require_core_dims(C, "core_residual");
  const Index n3 = C.dim3();
  double max_entry = 0.0;
  for (Index n = 0; n < C.size(); ++n) max_entry = std::max(max_entry, std::abs(C.data()[n]));
  if (max_entry == 0.0) return 0.0;
  const double scale = max_entry * max_entry * max_entry * max_entry;
  double worst = 0.0;
  for (Index k = 0; k < n3; ++k) {
    const auto ck = C.slice(k);
    for (Index r = 0; r < n3; ++r) {
      const auto cr = C.slice(r);
      const Complex lhs = ck(0, 0) * ck(1, 1) * cr(0, 1) * cr(1, 0);
      const Complex rhs = ck(0, 1) * ck(1, 0) * cr(0, 0) * cr(1, 1);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst / scale;
}

DecomposeResult decompose(const Tensor3& T, const DecomposeOptions& opts) {
  if (T.dim3() < 10) {
    throw Error(ErrorKind::Underdetermined, "decompose",
                "need N3 >= 10, got " + std::to_string(T.dim3()));
  }

  const CompressedTensor comp = hosvd_compress(T);
  const Matrix Phi = build_phi_matrix(comp.Tc);
  const ThetaVector theta = extract_theta(Phi);

  DecompositionDiagnostics diag;
  diag.mode1_rank_ratio = comp.mode1_rank_ratio;
  diag.mode2_rank_ratio = comp.mode2_rank_ratio;
  diag.kernel_ratio = theta.sigma_max > 0.0 ? theta.sigma_min / theta.sigma_max : 0.0;
  diag.kernel_gap = theta.gap;
  diag.ambiguous_kernel = theta.ambiguous_kernel;

  if (opts.verify_tol && diag.kernel_ratio > opts.kernel_tol) {
    throw NotDecomposableError(
        "kernel", "structured matrix has no usable left kernel (sigma_10/sigma_1 = " +
                      std::to_string(diag.kernel_ratio) + ")");
  }

  const GeneratorPairs gens = recover_generators(sm_matrix(theta.theta), opts.rank1_tol);
  diag.rank1_ratio = gens.rank1_ratio;
  diag.generators = gens;

  const auto [Aprime, Bprime] = assemble_AB(gens);
  const Tensor3 core = recover_core(comp.Tc, Aprime, Bprime);
  const CoreFactors cf = extract_core_factors(core, opts.rank1_tol);
  diag.core_rank1_ratio = cf.worst_rank1_ratio;
  diag.pivot = cf.pivot;

  ParaTuck2Factors factors(comp.Ac * Aprime, comp.Bc * Bprime, cf.F, cf.G, cf.H);
  diag.residual_abs_unrefined = frob_dist_sq(T, reconstruct(factors));
  diag.residual_abs = diag.residual_abs_unrefined;

  if (opts.als_iters > 0) {
    AlsOptions als_opts;
    als_opts.max_iters = opts.als_iters;
    auto [refined, trace] = als_run(T, factors, als_opts);
    const double refined_err = frob_dist_sq(T, reconstruct(refined));
    if (refined_err <= diag.residual_abs) {
      factors = std::move(refined);
      diag.residual_abs = refined_err;
    }
    diag.als_iters_run = trace.iterations;
  }

  diag.residual_rel = diag.residual_abs / std::max(frob_norm_sq(T), 1e-300);

  if (opts.verify_tol && diag.residual_abs > *opts.verify_tol) {
    DecomposeResult best{std::move(factors), diag};
    throw NotDecomposableError("verify",
                               "residual " + std::to_string(diag.residual_abs) +
                                   " exceeds verify tolerance " + std::to_string(*opts.verify_tol),
                               std::move(best));
  }
  return {std::move(factors), diag};
}

}  // namespace paratuck2
