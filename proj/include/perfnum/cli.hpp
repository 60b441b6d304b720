#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perfnum::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,  // a check failed or a counterexample turned up
  kUsage = 2,       // bad arguments or violated preconditions
  kResource = 3,    // incomplete factorization or exhausted budget
};

// Runs one command line; the report goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace perfnum::cli
