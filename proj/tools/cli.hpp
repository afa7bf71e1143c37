#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace repomine::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kShortfall = 3,
};

// Runs one subcommand. `args` excludes the program name. The one-line
// summary goes to `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace repomine::cli
