#pragma once

#include <stdexcept>
#include <string>

namespace gammasum {

// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument sits on (or within tolerance of) a pole of the Gamma function.
class PoleError : public Error {
 public:
  using Error::Error;
};

// The pole strip of a Mellin-Barnes integrand is empty.
class InconsistentCoefficients : public Error {
 public:
  using Error::Error;
};

// A contour integral or iterative method failed to reach its tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// Input outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A truncated series oracle stopped shrinking before its term budget ran out.
class OracleDiverged : public Error {
 public:
  using Error::Error;
};

// Malformed job configuration or command line.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace gammasum
