#pragma once

// Command-line front end.  Exposed as a library function so tests can drive
// it in-process; the mlcm binary is a thin wrapper.
//
// Subcommands: eval, table, density, cdf, verify, limit-demo.
// Exit codes: 0 success, 1 verification failure, 2 argument error,
// 3 numerical non-convergence.

namespace mlcm::cli {

int run(int argc, const char* const* argv);

}  // namespace mlcm::cli
