#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "ellipcenters/errors.hpp"
#include "ellipcenters/line_search.hpp"

namespace ec = ellipcenters;

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

auto parabola(double vertex, double floor) {
  return [=](double v) { return (v - vertex) * (v - vertex) + floor; };
}
auto parabola_slope(double vertex) {
  return [=](double v) { return 2.0 * (v - vertex); };
}

}  // namespace

TEST(RayMinimizer, VertexWithSlopePolish) {
  const auto r = ec::minimize_on_ray(parabola(0.7, 1.0), parabola_slope(0.7), 0.7 * 0.7 + 1.0, -1.4);
  EXPECT_NEAR(r.step, 0.7, 1e-8);
  EXPECT_NEAR(r.value, 1.0, 1e-14);
}

TEST(RayMinimizer, VertexWithoutSlope) {
  const auto r = ec::minimize_on_ray(parabola(0.7, 1.0), nullptr, 0.7 * 0.7 + 1.0, kNaN);
  EXPECT_NEAR(r.step, 0.7, 1e-6);
}

TEST(RayMinimizer, AscentAtOriginReturnsZero) {
  const auto r = ec::minimize_on_ray(parabola(-1.0, 0.0), parabola_slope(-1.0), 1.0, 2.0);
  EXPECT_EQ(r.step, 0.0);
  EXPECT_EQ(r.value, 1.0);

  // Without the slope hint the search has to discover it by sampling.
  const auto s = ec::minimize_on_ray(parabola(-1.0, 0.0), nullptr, 1.0, kNaN);
  EXPECT_EQ(s.step, 0.0);
}

TEST(RayMinimizer, InitialStepFarFromMinimizer) {
  for (double h0 : {1e-9, 1e-3, 1e3, 1e8}) {
    ec::RayMinimizerOptions opts;
    opts.initial_step = h0;
    const auto r = ec::minimize_on_ray(parabola(42.0, -3.0), parabola_slope(42.0),
                                       42.0 * 42.0 - 3.0, -84.0, opts);
    EXPECT_NEAR(r.step, 42.0, 1e-7 * 42.0) << h0;
  }
}

TEST(RayMinimizer, AsymmetricConvexFunction) {
  // h(v) = exp(v) - 3v has its minimum at ln 3.
  const auto r = ec::minimize_on_ray([](double v) { return std::exp(v) - 3.0 * v; },
                                     [](double v) { return std::exp(v) - 3.0; }, 1.0, -2.0);
  EXPECT_NEAR(r.step, std::log(3.0), 1e-10);
}

TEST(RayMinimizer, NeverWorseThanOrigin) {
  for (double vertex : {1e-12, 1e-6, 0.5, 10.0}) {
    const double h0 = vertex * vertex;
    const auto r = ec::minimize_on_ray(parabola(vertex, 0.0), parabola_slope(vertex), h0, -2 * vertex);
    EXPECT_LE(r.value, h0);
    EXPECT_GE(r.step, 0.0);
  }
}

TEST(RayMinimizer, BudgetExceededCarriesBestStep) {
  ec::RayMinimizerOptions opts;
  opts.max_evaluations = 6;
  opts.initial_step = 1e-6;
  try {
    ec::minimize_on_ray(parabola(1e3, 0.0), nullptr, 1e6, kNaN, opts);
    FAIL() << "expected BudgetExceededError";
  } catch (const ec::BudgetExceededError& e) {
    EXPECT_GT(e.best_step(), 0.0);
  }
}

TEST(RayMinimizer, UnboundedBelowIsNonCoercive) {
  ec::RayMinimizerOptions opts;
  opts.max_expansions = 40;
  EXPECT_THROW(ec::minimize_on_ray([](double v) { return -v; }, [](double) { return -1.0; }, 0.0,
                                   -1.0, opts),
               ec::NonCoerciveError);
}

TEST(RayMinimizer, CountsEvaluations) {
  int calls = 0;
  const auto r = ec::minimize_on_ray(
      [&](double v) {
        ++calls;
        return (v - 2.0) * (v - 2.0);
      },
      [&](double v) {
        ++calls;
        return 2.0 * (v - 2.0);
      },
      4.0, -4.0);
  EXPECT_EQ(r.evaluations, calls);
}
