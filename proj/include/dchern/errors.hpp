#pragma once

#include <stdexcept>
#include <string>

namespace dchern {

// Bad input: parameters, geometry, configuration keys.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds the configured dense-matrix budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: eigensolver non-convergence, integrity checks.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dchern
