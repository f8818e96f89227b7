#pragma once

#include <cstdint>
#include <random>

#include "paratuck2/tensor.hpp"

namespace paratuck2 {

/// Seeded standard-normal sampler used everywhere randomness is needed, so
/// results reproduce across platforms. The engine is std::mt19937_64 (its
/// stream is fixed by the standard); uniforms are (x >> 11) * 2^-53 from raw
/// draws and normals come from the classic Box-Muller transform, bypassing
/// the implementation-defined std::normal_distribution.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Fills column-major with real standard normals (zero imaginary part).
  void fill(Matrix& M) {
    for (Index j = 0; j < M.cols(); ++j)
      for (Index i = 0; i < M.rows(); ++i) M(i, j) = Complex(normal(), 0.0);
  }

  Matrix normal_matrix(Index rows, Index cols) {
    Matrix M(rows, cols);
    fill(M);
    return M;
  }

  /// Complex entries with independent N(0,1) real and imaginary parts.
  Matrix complex_normal_matrix(Index rows, Index cols) {
    Matrix M(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) {
        const double re = normal();
        const double im = normal();
        M(i, j) = Complex(re, im);
      }
    return M;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace paratuck2
