#pragma once

#include <ostream>

namespace zeeman {

//! Exit codes of run_cli.
enum ExitCode : int {
  kExitOk = 0,
  kExitChecksFailed = 1,   // validate: at least one check failed
  kExitInvalidInput = 2,
  kExitQuadrature = 3,
  kExitCrossCheck = 4,     // shift/sweep result disagrees with an applicable closed form
};

//! Entry point behind the `zeeman` executable; writes results to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace zeeman
