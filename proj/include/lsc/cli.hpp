#pragma once

namespace lsc {

inline constexpr const char* kArtifactVersion = "1.0.0";

// Parses argv, runs the named subcommand, and writes its result files plus a
// manifest.json into the output directory.  Exit codes: 0 success, 1 config
// or usage error, 2 numerical non-convergence, 3 guard violation.
int run_cli(int argc, const char* const* argv);

}  // namespace lsc
