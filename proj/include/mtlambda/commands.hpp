#pragma once

// The mtlambda command line. Exit codes: 0 success, 1 a check failed,
// 2 usage or input error, 3 resource budget exceeded, 4 internal error.

#include <ostream>

namespace mtlambda {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitBudget = 3,
  kExitInternal = 4,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mtlambda
