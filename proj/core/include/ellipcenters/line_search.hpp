#pragma once

#include <functional>

namespace ellipcenters {

struct RayMinimizerOptions {
  // First trial step; halved until it improves on h(0), then doubled to bracket.
  double initial_step = 1.0;
  // Golden-section stops once the bracket is this small relative to the step.
  double relative_tolerance = 1e-8;
  // Slope polish stops once |h'(v)| <= slope_tolerance * |h'(bracket start)|.
  double slope_tolerance = 1e-12;
  int max_evaluations = 500;
  int max_shrinks = 200;
  int max_expansions = 200;
};

struct RayMinimum {
  double step = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Minimizes a convex h on [0, inf).
///
/// Bracket by halving/doubling on values, golden-section on values, then,
/// when a slope callback is supplied, a safeguarded regula-falsi polish on
/// h'(v) = 0 inside the final bracket. Value-only golden-section resolves the
/// argmin to about sqrt(machine epsilon); the slope polish takes it to full
/// precision. Returns step 0 when h does not decrease from the origin.
///
/// `value_at_zero` is h(0). `slope_at_zero`, when finite, short-circuits the
/// search if nonnegative.
///
/// Throws BudgetExceededError (carrying the best step so far) when
/// max_evaluations is reached, NonCoerciveError when h keeps decreasing past
/// max_expansions doublings.
RayMinimum minimize_on_ray(const std::function<double(double)>& value,
                           const std::function<double(double)>& slope, double value_at_zero,
                           double slope_at_zero, const RayMinimizerOptions& options = {});

}  // namespace ellipcenters
