#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qesb::cli {

/// Process exit codes; stable contract.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kNonConserving = 3,
  kNumerical = 4,
};

/// Runs `qesboson <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qesb::cli
