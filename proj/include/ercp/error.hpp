#pragma once

#include <stdexcept>
#include <string>

namespace ercp {

/// Input that violates an operation's precondition (malformed graph, bad parameters).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured work or size budget would be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ercp
