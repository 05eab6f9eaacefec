#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kfl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. `position()` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at column " + std::to_string(position + 1)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A search space larger than the configured guard allows.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A scheme, theorem, or witness name that is not registered.
class UnknownNameError : public Error {
 public:
  using Error::Error;
};

}  // namespace kfl
