#pragma once

#include <stdexcept>
#include <string>

namespace gme {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Detection status identical at both ends of a bisection bracket.
class BracketError : public Error {
 public:
  using Error::Error;
};

}  // namespace gme
