#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clv {

// Precondition violations on parameters and shapes.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A variable (column) with zero variance where a standardized or correlated
// view of it is required.
class DegenerateVariable : public std::runtime_error {
 public:
  DegenerateVariable(std::size_t column, const std::string& context)
      : std::runtime_error(context + ": variable " + std::to_string(column) +
                           " has zero variance"),
        column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

// Input that admits no meaningful answer (all points identical, no
// within-group spread).
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace clv
