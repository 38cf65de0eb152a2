#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mml::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputError = 2, kNumericalError = 3 };

/// Entry point behind the `mml_estim` binary. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mml::cli
