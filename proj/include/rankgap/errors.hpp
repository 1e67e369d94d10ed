#pragma once

#include <stdexcept>
#include <string>

namespace rankgap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad file syntax, dimension mismatch, parameter out of range.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation refused to run because it would exceed a configured cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition of an algorithm does not hold for the input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace rankgap
