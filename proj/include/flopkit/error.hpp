#pragma once

#include <stdexcept>
#include <string>

namespace flopkit {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (bad length,
/// ill-typed word, inconsistent table, non-terminating knit, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (unknown selector, unparsable word).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace flopkit
