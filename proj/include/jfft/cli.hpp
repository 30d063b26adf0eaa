#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jfft::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kInputFormat = 2,
  kVerification = 3,
  kBudget = 4,
};

/// Runs one command line (argv[0] is the program name). Results go to files named by
/// --output/-o, or to `out` when no output file is given; diagnostics go to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace jfft::cli
