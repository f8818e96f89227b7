#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace paratuck2 {

/// Failure categories surfaced by the library. The CLI maps each kind to a
/// distinct exit code (see cli.hpp).
enum class ErrorKind {
  Argument,             // precondition violated (dims, index range, ...)
  RankDeficient,        // multilinear rank below (2,2) at compression
  Underdetermined,      // N3 < 10: left kernel of the 10-row matrix is vacuous
  NotRankOne,           // a matrix required to be rank-one is not
  SingularRecovery,     // coincident or doubly-infinite generators; A/B not identifiable
  DegeneratePivot,      // every candidate pivot slice has a (near-)zero entry
  DegeneratePolynomial, // all quadratic coefficients negligible
  NotDecomposable,      // residual or kernel check failed in verify mode
  Numerical,            // backend failure (SVD non-convergence)
  Io,                   // unreadable/unwritable file
  Parse,                // malformed or inconsistent file contents
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string stage, const std::string& message)
      : std::runtime_error("[" + std::string(to_string(kind)) + " at " + stage + "] " + message),
        kind_(kind),
        stage_(std::move(stage)) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Pipeline stage or operation name that raised the error.
  const std::string& stage() const noexcept { return stage_; }

 private:
  ErrorKind kind_;
  std::string stage_;
};

}  // namespace paratuck2
