#pragma once

#include <stdexcept>
#include <string>

namespace urllc {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument is outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A root finder was handed an interval without a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

// An iterative solver ran out of iterations.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A target cannot be met for any admissible value of the free variable.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Queue service rate does not exceed the mean arrival rate.
class StabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace urllc
