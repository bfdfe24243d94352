#pragma once

#include <stdexcept>
#include <string>

namespace lcl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated (bad ids, invalid sets, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace lcl
