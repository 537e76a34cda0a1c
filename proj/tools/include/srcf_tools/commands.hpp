#pragma once

#include <iosfwd>

namespace srcf::tools {

/// Exit codes of the srcf tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,          // usage, parse or input error
  kExitCheckFailed = 2,    // a certified check failed
  kExitIndeterminate = 3,  // a check could not be certified either way
};

/// Runs one srcf invocation. Reports go to `out`, usage messages to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace srcf::tools
