#include "paratuck2/errors.hpp"

namespace paratuck2 {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Argument: return "argument";
    case ErrorKind::RankDeficient: return "rank-deficient";
    case ErrorKind::Underdetermined: return "underdetermined";
    case ErrorKind::NotRankOne: return "not-rank-one";
    case ErrorKind::SingularRecovery: return "singular-recovery";
    case ErrorKind::DegeneratePivot: return "degenerate-pivot";
    case ErrorKind::DegeneratePolynomial: return "degenerate-polynomial";
    case ErrorKind::NotDecomposable: return "not-decomposable";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Io: return "io";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace paratuck2
