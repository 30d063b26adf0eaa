#pragma once

#include <stdexcept>
#include <string>

namespace jfft {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied a value outside an operation's domain.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed file or record (CSV, plan JSON, version mismatch).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A check on a plan, a transform or an oracle did not hold.
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalue/content mismatch or loss of symmetry while planning.
class NumericalError : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

/// Internal bookkeeping disagreed with itself; always a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A dense allocation would exceed the configured memory budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace jfft
