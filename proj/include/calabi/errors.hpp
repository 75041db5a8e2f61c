#pragma once

#include <stdexcept>
#include <string>

namespace calabi {

// Bad user input or a violated precondition (CLI exit code 1).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the open domain of a chart function.
class DomainError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A numerical routine could not meet its contract (CLI exit code 2).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace calabi
