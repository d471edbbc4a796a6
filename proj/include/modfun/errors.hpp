#pragma once

#include <stdexcept>
#include <string>

namespace modfun {

// Bad input: out-of-range parameters, malformed specs, precondition
// violations the caller controls. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Not enough series terms or working precision for the requested result.
// Retrying with larger bounds may succeed. The CLI maps this to exit code 3.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact identity that must hold did not (non-rational symmetric function,
// integrality violation). Indicates a bug, never a rounding issue.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace modfun
