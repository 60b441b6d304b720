#pragma once

#include <stdexcept>
#include <string>

namespace perfnum {

// Violated preconditions. The CLI maps these to exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonPrimeExponent : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotMersennePrime : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class EvenExponent : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DomainTooSmall : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Work budgets exhausted. The CLI maps these to exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IncompleteFactorization : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

class BudgetExceeded : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

}  // namespace perfnum
