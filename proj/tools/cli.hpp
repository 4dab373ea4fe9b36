// Command dispatch for the `ams` tool. run() never exits the process, so tests
// drive it in-process and inspect the streams.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ams::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kInvariantViolation = 3,
  kBudgetExceeded = 4,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ams::cli
