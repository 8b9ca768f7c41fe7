#pragma once

#include <stdexcept>
#include <string>

namespace fmpl {

// Bad user-facing input: malformed files, inconsistent shapes, invalid flags.
class InvalidInputError : public std::runtime_error {
 public:
  explicit InvalidInputError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: non-positive-definite submatrix, zero pivot, degenerate data.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative procedure exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fmpl
