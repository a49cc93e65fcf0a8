#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace etale::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kInvalidInput = 2,
  kIoFailure = 3,
  kIntegrity = 4,
};

/// Runs etale-census with argv-style arguments (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace etale::cli
