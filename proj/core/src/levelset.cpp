#include "ellipcenters/levelset.hpp"

#include <cmath>
#include <limits>

#include "ellipcenters/errors.hpp"

namespace ellipcenters {

namespace {

struct Sample {
  double t;
  double residual;
};

}  // namespace

LevelStepResult find_level_step(const Objective& objective, const Vector& x, double fx,
                                const Vector& grad_x, const LevelStepOptions& options) {
  const double grad_norm = grad_x.norm();
  if (!(grad_norm > options.stationarity_tolerance) || grad_norm == 0.0) {
    throw PreconditionError("level step requested at a stationary point");
  }
  if (!std::isfinite(fx) || !grad_x.allFinite()) {
    throw NumericError("level step: non-finite value or gradient at x");
  }

  int evaluations = 0;
  auto residual = [&](double t) {
    ++evaluations;
    const double r = objective.value(x - t * grad_x) - fx;
    if (!std::isfinite(r)) throw NumericError("level step: non-finite objective value");
    return r;
  };

  const double tolerance = options.relative_tolerance * (1.0 + std::abs(fx));
  double t = options.initial_step.value_or(1.0);
  if (!(t > 0.0) || !std::isfinite(t)) t = 1.0;

  // Lower end: strictly below the level. Upper end: at or above it.
  std::optional<Sample> lo;
  std::optional<Sample> hi;

  double r = residual(t);
  if (r < 0.0) {
    lo = Sample{t, r};
  } else {
    hi = Sample{t, r};
    for (int i = 0; i < options.max_shrinks && !lo; ++i) {
      t *= 0.5;
      r = residual(t);
      if (r < 0.0) {
        lo = Sample{t, r};
      } else {
        hi = Sample{t, r};
      }
    }
    if (!lo) {
      throw NumericError("level step: no descent along -grad f(x); gradient inaccurate?");
    }
  }
  for (int i = 0; !hi; ++i) {
    if (i >= options.max_expansions) {
      throw NonCoerciveError("level step: objective did not return to its level after " +
                             std::to_string(options.max_expansions) +
                             " doublings (not strongly convex?)");
    }
    t = 2.0 * lo->t;
    r = residual(t);
    if (r < 0.0) {
      lo = Sample{t, r};
    } else {
      hi = Sample{t, r};
    }
  }

  Sample best = std::abs(lo->residual) < std::abs(hi->residual) ? *lo : *hi;
  auto consider = [&](Sample s) {
    if (std::abs(s.residual) < std::abs(best.residual)) best = s;
    if (s.residual < 0.0) {
      lo = s;
    } else {
      hi = s;
    }
  };

  // Bisect until the bracket is narrow, then polish with Illinois-modified
  // secant steps. If the polish stalls, bisection resumes.
  auto narrow = [&] { return hi->t - lo->t <= options.bisection_width * hi->t; };
  while (std::abs(best.residual) > tolerance) {
    if (narrow()) {
      int side = 0;
      double r_lo = lo->residual;
      double r_hi = hi->residual;
      for (int i = 0; i < options.max_secant_steps && std::abs(best.residual) > tolerance; ++i) {
        const double ts = lo->t - r_lo * (hi->t - lo->t) / (r_hi - r_lo);
        if (!(ts > lo->t && ts < hi->t)) break;
        const Sample s{ts, residual(ts)};
        consider(s);
        if (s.residual < 0.0) {
          r_lo = s.residual;
          if (side == -1) r_hi *= 0.5;
          side = -1;
        } else {
          r_hi = s.residual;
          if (side == 1) r_lo *= 0.5;
          side = 1;
        }
      }
      if (std::abs(best.residual) <= tolerance) break;
    }
    const double mid = 0.5 * (lo->t + hi->t);
    if (mid <= lo->t || mid >= hi->t) break;  // bracket at one ulp
    consider(Sample{mid, residual(mid)});
  }

  LevelStepResult result;
  result.t = best.t;
  result.y = x - best.t * grad_x;
  result.level_residual = best.residual;
  result.evaluations = evaluations;
  return result;
}

LevelStepResult find_level_step(const Objective& objective, const Vector& x,
                                const LevelStepOptions& options) {
  const Evaluation e = objective.evaluate(x);
  LevelStepResult r = find_level_step(objective, x, e.value, e.gradient, options);
  r.evaluations += 1;
  return r;
}

}  // namespace ellipcenters
