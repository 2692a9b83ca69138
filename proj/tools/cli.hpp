#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace groundhold::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParseError = 2,
  kInfeasible = 3,
  kIoError = 4,
  kVerifyFailed = 5,
};

/// Runs one `groundhold` invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace groundhold::cli
