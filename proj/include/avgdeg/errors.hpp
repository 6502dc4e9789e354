#pragma once

#include <stdexcept>
#include <string>

namespace avgdeg {

// Base for every failure the library reports. The CLI maps subclasses onto
// exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad exponent, broken invariant, wrong list length.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature could not meet its tolerance within the depth budget.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

// An integral fell in the dead band between "structurally zero" and
// "nonzero", so the nonzero count is not decidable at this tolerance.
class AmbiguousIntegral : public Error {
 public:
  using Error::Error;
};

// Root isolation or bisection failed.
class RootFindingError : public Error {
 public:
  using Error::Error;
};

// Generalized Vandermonde solve rejected (conditioning) or its roots did
// not verify.
class SynthesisError : public Error {
 public:
  using Error::Error;
};

// Polar flow left its domain: angular speed lost positivity or the radius
// escaped the guard interval.
class FlowError : public Error {
 public:
  using Error::Error;
};

// Continuation could not match a fixed point to the predicted root.
class ContinuationError : public Error {
 public:
  using Error::Error;
};

// The classifier reached a branch with no matching case or a failed
// precondition. Indicates a defect, never a valid verdict.
class UnreachableBranch : public Error {
 public:
  using Error::Error;
};

}  // namespace avgdeg
