#pragma once

#include "paratuck2/errors.hpp"

namespace paratuck2 {

/// Exit codes of the command-line tool; every error kind maps to its own
/// documented code.
enum ExitCode : int {
  kExitOk = 0,
  kExitRankDeficient = 2,
  kExitUnderdetermined = 3,
  kExitNotRankOne = 4,
  kExitSingularRecovery = 5,
  kExitDegeneratePivot = 6,
  kExitDegeneratePolynomial = 7,
  kExitNotDecomposable = 8,
  kExitNumerical = 9,
  kExitArgument = 10,
  kExitIo = 20,
  kExitParse = 21,
  kExitUsage = 64,
};

int exit_code_for(ErrorKind kind);

/// Entry point of the `paratuck2` tool (subcommands synth, decompose,
/// repro-det, monte-carlo). Kept out of main() so tests can drive it
/// in-process.
int run_cli(int argc, const char* const* argv);

}  // namespace paratuck2
