#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecf {

/// Parameters outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed textual input (rationals, decimals).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A truncated continued fraction hit a zero tail denominator.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::size_t level)
      : std::runtime_error(what), level_(level) {}

  std::size_t level() const noexcept { return level_; }

 private:
  std::size_t level_;
};

/// An iterative procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ecf
