#pragma once

#include <iosfwd>

namespace vsparse::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kNotConverged = 3,
  kUnbounded = 4,
  kOracleMismatch = 5,
};

// Runs one command line (argv[0] is the program name). Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vsparse::cli
