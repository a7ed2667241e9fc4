#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hden {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad partition, s out of range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by the zero rational function") {}
};

/// Evaluation hit a zero of the denominator.
class PoleError : public Error {
 public:
  explicit PoleError(const std::string& where) : Error("pole at q = " + where) {}
};

/// The oracle's estimated enumeration size is above the configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string estimate, std::string budget)
      : Error("estimated work " + estimate + " exceeds budget " + budget),
        estimate_(std::move(estimate)) {}
  const std::string& estimate() const noexcept { return estimate_; }

 private:
  std::string estimate_;
};

/// A truncated infinite sum did not show the required run of vanishing levels.
class TruncationUnsound : public Error {
 public:
  using Error::Error;
};

/// Requested closed form is outside the self-density tables.
class NotTabulated : public Error {
 public:
  using Error::Error;
};

}  // namespace hden
