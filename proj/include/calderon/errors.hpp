#pragma once

#include <stdexcept>

namespace calderon {

// Bad user input: malformed files, non-injective maps, parameter errors.
// CLI maps this to exit code 2.
struct invalid_input : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Computation failed despite valid input (no near-fixed directions, stalled
// line search escalated by a caller, ...). CLI maps this to exit code 3.
struct numerical_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace calderon
