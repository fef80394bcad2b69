#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace archvar {

/// Exit statuses of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitStatistical = 4,
};

/// Runs one `archvar` invocation. `args` excludes the program name.
/// Reports go to the --out file (or [output] path) when given, otherwise to
/// `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace archvar
