#pragma once

#include <stdexcept>
#include <string>

namespace ftvn {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point or spectral vector does not match the layout of its system.
class LayoutError : public Error {
 public:
  using Error::Error;
};

// Input is outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of the operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The operation is well defined but not supported for this input size or
// variant (for example an LP over too many vertices).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// Malformed system or set descriptor.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ftvn
