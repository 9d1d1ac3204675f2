#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace supersasaki::cli {

/// Exit codes: 0 all checks pass, 1 some check failed, 2 usage or input error.
enum ExitCode : int { kPass = 0, kCheckFailed = 1, kInputError = 2 };

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace supersasaki::cli
