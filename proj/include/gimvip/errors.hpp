#pragma once

#include <stdexcept>
#include <string>

namespace gimvip {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration, dimension mismatch, unknown registered name.
class InputError : public Error {
 public:
  using Error::Error;
};

/// No closed form and no separable fallback for the requested (g, Omega).
class UnsupportedPair : public Error {
 public:
  using Error::Error;
};

/// An iterative routine exhausted its iteration budget.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// A state or iterate became NaN/inf.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace gimvip
