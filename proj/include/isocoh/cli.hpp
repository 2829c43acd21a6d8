// Batch command-line front end.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isocoh::cli {

enum ExitCode : int {
  kSuccess = 0,
  kMismatch = 1,  // scan or oracle-check disagreement
  kUsage = 2,     // bad arguments, unloadable surface, rank mismatch
  kFailure = 3,   // computation raised (non-abutment, inconsistent data)
};

/// `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isocoh::cli
