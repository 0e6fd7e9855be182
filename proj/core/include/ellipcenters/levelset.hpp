#pragma once

#include <optional>

#include "ellipcenters/objective.hpp"

namespace ellipcenters {

struct LevelStepOptions {
  // |f(y) - f(x)| <= relative_tolerance * (1 + |f(x)|) on return.
  double relative_tolerance = 1e-10;
  int max_expansions = 100;
  int max_shrinks = 200;
  // Starting trial step; 1 when absent.
  std::optional<double> initial_step;
  // Gradients with norm at or below this are treated as stationary.
  double stationarity_tolerance = 0.0;
  // Secant polish starts once the bracket width is below this fraction of t.
  double bisection_width = 0.1;
  int max_secant_steps = 12;
};

struct LevelStepResult {
  double t = 0.0;
  Vector y;
  double level_residual = 0.0;  // f(y) - f(x)
  int evaluations = 0;
};

/// Finds the unique t > 0 with f(x - t g) = f(x), g = grad f(x).
///
/// The ray starts downhill (slope -|g|^2) and strong convexity makes it
/// coercive, so g(t) = f(x - t g) - f(x) has exactly one positive root.
/// The root is bracketed by halving/doubling the trial step, bisected to a
/// narrow bracket, then polished by safeguarded secant steps until the
/// residual is within tolerance.
///
/// Throws PreconditionError on a stationary x, NonCoerciveError when no
/// upper bracket is found within max_expansions doublings, and NumericError
/// on non-finite values.
LevelStepResult find_level_step(const Objective& objective, const Vector& x, double fx,
                                const Vector& grad_x, const LevelStepOptions& options = {});

LevelStepResult find_level_step(const Objective& objective, const Vector& x,
                                const LevelStepOptions& options = {});

}  // namespace ellipcenters
