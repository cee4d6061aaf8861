#pragma once

#include <string>
#include <vector>

namespace ccstat::cli {

// Dispatches one command line.  Returns 0 on success, 1 on usage or input
// errors, 2 on numerical failure.
int run(const std::vector<std::string>& args);

}  // namespace ccstat::cli
