#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hmmforge::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNeedMoreData = 3,
  kReject = 4,
};

/// Runs one invocation; `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hmmforge::cli
