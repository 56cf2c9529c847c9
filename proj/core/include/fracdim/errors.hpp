#pragma once

#include <stdexcept>

namespace fracdim {

// Error taxonomy mirrored by the CLI exit codes:
// input_error -> 1, numeric_error (and budget_error) -> 2, invariant_error -> 3.

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Word enumeration over the configured cap. A resource failure, not a malformed
// input, so it shares the numerical-failure exit code.
struct budget_error : numeric_error {
  using numeric_error::numeric_error;
};

struct invariant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fracdim
