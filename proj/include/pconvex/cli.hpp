#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace pconvex {

struct CommandResult {
  int exit_code = 0;        // 0 success, 1 computation error, 2 usage or format error
  std::string report_path;  // empty when no report was written
  std::vector<std::string> warnings;
};

// argv excludes the program name, e.g. {"hilbert", "dist", "--domain", ...}.
// The one-line summary goes to `out`, diagnostics to `err`.
CommandResult dispatch(const std::vector<std::string>& argv, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr);

}  // namespace pconvex
