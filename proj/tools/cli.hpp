#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gaes::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kData = 2,
  kSelfTest = 3,
};

/// Run the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaes::cli
