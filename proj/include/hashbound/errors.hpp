#pragma once

#include <stdexcept>
#include <string>

namespace hashbound {

/// Caller passed something that violates an operation's precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed file contents (CSV, checkpoint, code file).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Training produced a non-finite loss.
class TrainingDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hashbound
