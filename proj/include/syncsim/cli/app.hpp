#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace syncsim::cli {

/// Full command-line entry point. `args` excludes the program name.
/// Returns the process exit status (0 ok, 1 check failed, 2 invalid input).
int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace syncsim::cli
