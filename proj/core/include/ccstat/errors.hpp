#pragma once

#include <stdexcept>
#include <string>

namespace ccstat {

// Raised when an iterative numerical procedure fails (non-convergence,
// flat likelihood, maximizer on a grid boundary).  Input/usage problems
// use std::invalid_argument instead; the CLI maps the two to different
// exit codes.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ccstat
