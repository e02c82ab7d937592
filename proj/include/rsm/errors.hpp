#pragma once

#include <stdexcept>
#include <string>

namespace rsm {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The model point or instance has no solutions (alpha > 1, M = 0, ...).
class UnsatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact enumeration or generation would exceed the desk-scale budget.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Root finder was handed an interval without a sign change.
class NoBracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters fall outside the regime where a piecewise formula is defined.
class DegenerateRegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rsm
