#pragma once

#include <ostream>

namespace extremal::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kInvalidArgument = 2,
  kInvalidSignature = 3,
  kCapExceeded = 4,
  kInfeasible = 5,
  kMalformedDocument = 6,
  kVerifyFailed = 7,
};

/// Directory used for outputs when a command has no explicit --out.
inline constexpr const char* kOutDirEnv = "EXTREMAL_OUT_DIR";

/// Parses and runs one command line (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace extremal::cli
