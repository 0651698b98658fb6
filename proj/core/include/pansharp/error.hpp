#pragma once

#include <stdexcept>
#include <string>

namespace pansharp {

// Every failure raised by the library derives from Error so callers can
// catch one type; the subclasses let the CLI map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Input is well-formed but the requested quantity is undefined for it
// (constant image in a correlation, rank-deficient band set, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pansharp
