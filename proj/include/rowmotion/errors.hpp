#pragma once

#include <stdexcept>
#include <string>

namespace rowmotion {

/// Malformed input: bad tree notation, invalid node sets, bad descriptors.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its configured size budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero (or a zero value) during birational toggling, or an
/// exhausted restart budget in prime-field mode.
class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rowmotion
