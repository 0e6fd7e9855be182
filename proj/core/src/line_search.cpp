#include "ellipcenters/line_search.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ellipcenters/errors.hpp"

namespace ellipcenters {

namespace {

constexpr double kInvPhi = 0.61803398874989484820;  // 1 / golden ratio

struct Point {
  double v;
  double h;
};

}  // namespace

RayMinimum minimize_on_ray(const std::function<double(double)>& value,
                           const std::function<double(double)>& slope, double value_at_zero,
                           double slope_at_zero, const RayMinimizerOptions& options) {
  RayMinimum result;
  result.step = 0.0;
  result.value = value_at_zero;
  if (std::isfinite(slope_at_zero) && slope_at_zero >= 0.0) return result;

  Point best{0.0, value_at_zero};
  auto eval = [&](double v) {
    if (result.evaluations >= options.max_evaluations) {
      throw BudgetExceededError("ray search: evaluation budget of " +
                                    std::to_string(options.max_evaluations) + " exhausted",
                                best.v);
    }
    ++result.evaluations;
    const double h = value(v);
    if (!std::isfinite(h)) throw NumericError("ray search: non-finite function value");
    if (h < best.h) best = {v, h};
    return h;
  };

  // Bracket a < b < c with h(b) < h(a) and h(b) <= h(c).
  Point a{0.0, value_at_zero};
  double step = options.initial_step > 0.0 && std::isfinite(options.initial_step)
                    ? options.initial_step
                    : 1.0;
  Point b{step, eval(step)};
  Point c{};
  if (b.h >= a.h) {
    c = b;
    bool improved = false;
    for (int i = 0; i < options.max_shrinks; ++i) {
      const double v = 0.5 * c.v;
      const double h = eval(v);
      if (h < a.h) {
        b = {v, h};
        improved = true;
        break;
      }
      c = {v, h};
    }
    if (!improved) {
      result.step = 0.0;
      result.value = value_at_zero;
      return result;
    }
  } else {
    c = {2.0 * b.v, eval(2.0 * b.v)};
    for (int i = 0; c.h < b.h; ++i) {
      if (i >= options.max_expansions) {
        throw NonCoerciveError("ray search: function keeps decreasing along the ray");
      }
      a = b;
      b = c;
      c = {2.0 * b.v, eval(2.0 * b.v)};
    }
  }

  // Golden-section on [a, c].
  double lo = a.v;
  double hi = c.v;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double h1 = eval(x1);
  double h2 = eval(x2);
  while (hi - lo > options.relative_tolerance * std::max(best.v, std::abs(hi) * 1e-3)) {
    if (h1 < h2) {
      hi = x2;
      x2 = x1;
      h2 = h1;
      x1 = hi - kInvPhi * (hi - lo);
      if (!(x1 > lo && x1 < x2)) break;
      h1 = eval(x1);
    } else {
      lo = x1;
      x1 = x2;
      h1 = h2;
      x2 = lo + kInvPhi * (hi - lo);
      if (!(x2 > x1 && x2 < hi)) break;
      h2 = eval(x2);
    }
  }

  if (slope) {
    // Regula falsi (Illinois) on h' within [lo, hi]. h is convex, so h' is
    // nondecreasing and its sign change marks the minimizer.
    auto eval_slope = [&](double v) {
      if (result.evaluations >= options.max_evaluations) {
        throw BudgetExceededError("ray search: evaluation budget exhausted during polish",
                                  best.v);
      }
      ++result.evaluations;
      const double s = slope(v);
      if (!std::isfinite(s)) throw NumericError("ray search: non-finite slope");
      return s;
    };
    auto slope_at = [&](double v) {
      return (v == 0.0 && std::isfinite(slope_at_zero)) ? slope_at_zero : eval_slope(v);
    };
    double s_lo = slope_at(lo);
    double s_hi = eval_slope(hi);
    // Rounding ties in the golden-section comparisons can drop the minimizer
    // from [lo, hi]; fall back to the outer bracket on the side that lost it.
    if (s_lo > 0.0 && lo > a.v) {
      hi = lo;
      s_hi = s_lo;
      lo = a.v;
      s_lo = slope_at(lo);
    } else if (s_hi < 0.0 && hi < c.v) {
      lo = hi;
      s_lo = s_hi;
      hi = c.v;
      s_hi = eval_slope(hi);
    }
    if (s_lo < 0.0 && s_hi > 0.0) {
      const double target = options.slope_tolerance * std::abs(s_lo);
      double candidate = std::numeric_limits<double>::quiet_NaN();
      int side = 0;
      for (int i = 0; i < 100; ++i) {
        double v = lo - s_lo * (hi - lo) / (s_hi - s_lo);
        if (!(v > lo && v < hi)) v = 0.5 * (lo + hi);
        if (v <= lo || v >= hi) break;
        const double s = eval_slope(v);
        candidate = v;
        if (std::abs(s) <= target) break;
        if (s < 0.0) {
          lo = v;
          s_lo = s;
          if (side == -1) s_hi *= 0.5;
          side = -1;
        } else {
          hi = v;
          s_hi = s;
          if (side == 1) s_lo *= 0.5;
          side = 1;
        }
      }
      if (std::isfinite(candidate)) {
        const double h = eval(candidate);
        // Values within rounding of the golden-section optimum are accepted:
        // the slope root is the more accurate argmin there.
        const double slack = 4.0 * std::numeric_limits<double>::epsilon() *
                             (std::abs(h) + std::abs(value_at_zero));
        if (h <= value_at_zero && h <= best.h + slack) {
          result.step = candidate;
          result.value = h;
          return result;
        }
      }
    } else if (s_lo == 0.0 && lo > 0.0) {
      const double h = eval(lo);
      if (h <= value_at_zero) {
        result.step = lo;
        result.value = h;
        return result;
      }
    }
  }

  result.step = best.v;
  result.value = best.h;
  return result;
}

}  // namespace ellipcenters
