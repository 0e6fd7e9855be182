#pragma once

#include <stdexcept>
#include <string>

namespace ellipcenters {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatches, nonpositive parameters, bad files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A routine was called on a point where its precondition fails (e.g. a
/// stationary point handed to the level-step search).
class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

/// Non-finite arithmetic, exhausted inner budgets, or violated curvature
/// assumptions detected at run time.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The level-step bracket could not be closed: the objective does not grow
/// along the ray, so it is not strongly convex.
class NonCoerciveError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// An inner one-dimensional search ran out of evaluations.
class BudgetExceededError : public NumericError {
 public:
  BudgetExceededError(const std::string& what, double best_step)
      : NumericError(what), best_step_(best_step) {}

  double best_step() const noexcept { return best_step_; }

 private:
  double best_step_;
};

/// Conic or frame construction in a regime where it is undefined.
class GeometryError : public Error {
 public:
  using Error::Error;
};

class DegenerateConicError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class TangentialGradientError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

}  // namespace ellipcenters
