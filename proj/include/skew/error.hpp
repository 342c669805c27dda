#pragma once

#include <stdexcept>
#include <string>

namespace skew {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: unknown identifiers, non-total tables, mismatched domains.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation would leave the finite window it was asked to stay in.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An operation was invoked outside the hypotheses it is defined for.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace skew
