#pragma once

#include <stdexcept>
#include <string>

namespace netcontract {

// Input rejected by a precondition, a dimension guard, or model validation.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical method failed to produce a result that meets its contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace netcontract
