#pragma once

#include <optional>

#include "ellipcenters/ellipse_geometry.hpp"
#include "ellipcenters/levelset.hpp"
#include "ellipcenters/objective.hpp"
#include "ellipcenters/trace.hpp"

namespace ellipcenters {

/// How the next iterate is picked on the semiline of centers.
enum class Variant {
  SemilineMin,     // exact minimization of f over the semiline
  DecreaseSearch,  // first sampled point improving on the midpoint
};

const char* to_string(Variant variant);

struct SolverConfig {
  double epsilon = 0.01;  // stop once |grad f(x)| <= epsilon
  int max_iterations = 1000;
  Variant variant = Variant::SemilineMin;
  double level_tolerance = 1e-10;
  DependenceTolerances dependence;
  double cos_tolerance = 1e-12;
  double linesearch_tolerance = 1e-3;
  int max_inner_evaluations = 500;
  int max_level_expansions = 100;
  bool store_points = true;

  void validate() const;
};

struct SemilineResult {
  double v = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Picks v >= 0 on {base + v d}.
///
/// SemilineMin minimizes h(v) = f(base + v d), a convex function of v.
/// DecreaseSearch samples v = v0, v0/2, v0/4, ... and returns the first with
/// f(base + v d) < f(base), or 0 if none qualifies.
SemilineResult semiline_search(const Objective& objective, const Vector& base, double base_value,
                               const Vector& direction, Variant variant, const SolverConfig& config,
                               double initial_v);

struct StepDiagnostics {
  LevelStepResult level;
  Branch branch = Branch::Midpoint;
  FallbackReason fallback = FallbackReason::None;
  double cos_theta = std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  double midpoint_value = 0.0;  // f((x + y) / 2)
  double next_value = 0.0;
  int evaluations = 0;
};

struct StepResult {
  Vector x_next;
  StepDiagnostics diagnostics;
};

/// One ellipcenter iteration from x (with f(x) and grad f(x) precomputed).
///
/// Guarantees f(x_next) <= f((x + y)/2) < f(x). Geometry degeneracies fall
/// back to the midpoint and are reported in the diagnostics; level-step
/// failures propagate as exceptions.
StepResult me_step(const Objective& objective, const Vector& x, double fx, const Vector& grad_x,
                   const SolverConfig& config, std::optional<double> warm_t = std::nullopt,
                   std::optional<double> warm_v = std::nullopt);

StepResult me_step(const Objective& objective, const Vector& x, const SolverConfig& config,
                   std::optional<double> warm_t = std::nullopt);

/// Runs the method until |grad f| <= epsilon or max_iterations updates.
/// The stopping test precedes every step, so a stationary x0 gives 0 iterations.
/// Numeric failures end the run with Termination::NumericError and the
/// partial trace.
SolverRun minimize(const Objective& objective, const Vector& x0, const SolverConfig& config = {});

}  // namespace ellipcenters
