#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rbsuper::cli {

// Exit codes: 0 every check passed, 1 a check failed, 2 input or usage error.
enum ExitCode { kPass = 0, kFail = 1, kInputError = 2 };

// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rbsuper::cli
