#pragma once

#include <stdexcept>
#include <string>

namespace berk {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A root (or preimage) lives outside Q_p; the instance is unsupported.
class RequiresExtension : public Error {
 public:
  using Error::Error;
};

// p-adic approximations cannot separate the objects at the working precision.
class InsufficientPrecision : public Error {
 public:
  using Error::Error;
};

// Preimage multiplicities did not sum to the degree.
class MultiplicityMismatch : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace berk
