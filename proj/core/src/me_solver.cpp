#include "ellipcenters/me_solver.hpp"

#include <cmath>

#include "ellipcenters/errors.hpp"
#include "ellipcenters/line_search.hpp"

namespace ellipcenters {

const char* to_string(Variant variant) {
  return variant == Variant::SemilineMin ? "semiline-min" : "decrease-search";
}

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw InputError("solver: epsilon must be positive");
  if (max_iterations < 1) throw InputError("solver: max_iterations must be >= 1");
  if (!(level_tolerance > 0.0) || !(linesearch_tolerance > 0.0) ||
      !(dependence.sin_theta > 0.0) || !(dependence.relative_w > 0.0) || !(cos_tolerance > 0.0)) {
    throw InputError("solver: tolerances must be positive");
  }
  if (max_inner_evaluations < 1 || max_level_expansions < 1) {
    throw InputError("solver: inner budgets must be positive");
  }
}

SemilineResult semiline_search(const Objective& objective, const Vector& base, double base_value,
                               const Vector& direction, Variant variant, const SolverConfig& config,
                               double initial_v) {
  if (!(initial_v > 0.0) || !std::isfinite(initial_v)) initial_v = 1.0;
  SemilineResult result;
  result.value = base_value;

  if (variant == Variant::DecreaseSearch) {
    double v = initial_v;
    for (int i = 0; i < 60; ++i, v *= 0.5) {
      if (result.evaluations >= config.max_inner_evaluations) {
        throw BudgetExceededError("decrease search: evaluation budget exhausted", 0.0);
      }
      ++result.evaluations;
      const double h = objective.value(base + v * direction);
      if (!std::isfinite(h)) throw NumericError("decrease search: non-finite value");
      if (h < base_value) {
        result.v = v;
        result.value = h;
        return result;
      }
    }
    return result;
  }

  auto value = [&](double v) { return objective.value(base + v * direction); };
  auto slope = [&](double v) { return objective.gradient(base + v * direction).dot(direction); };

  ++result.evaluations;
  const double slope0 = slope(0.0);
  RayMinimizerOptions options;
  options.initial_step = initial_v;
  options.relative_tolerance = config.linesearch_tolerance;
  options.max_evaluations = config.max_inner_evaluations - 1;
  const RayMinimum m = minimize_on_ray(value, slope, base_value, slope0, options);
  result.v = m.step;
  result.value = m.value;
  result.evaluations += m.evaluations;
  return result;
}

StepResult me_step(const Objective& objective, const Vector& x, double fx, const Vector& grad_x,
                   const SolverConfig& config, std::optional<double> warm_t,
                   std::optional<double> warm_v) {
  LevelStepOptions level_options;
  level_options.relative_tolerance = config.level_tolerance;
  level_options.max_expansions = config.max_level_expansions;
  level_options.initial_step = warm_t;

  StepResult out;
  StepDiagnostics& diag = out.diagnostics;
  diag.level = find_level_step(objective, x, fx, grad_x, level_options);
  diag.evaluations = diag.level.evaluations;
  const Vector& y = diag.level.y;

  Vector midpoint = 0.5 * (x + y);
  const Evaluation at_y = objective.evaluate(y);
  diag.midpoint_value = objective.value(midpoint);
  diag.evaluations += 2;
  if (!std::isfinite(diag.midpoint_value) || !at_y.gradient.allFinite()) {
    throw NumericError("me_step: non-finite evaluation at y or the midpoint");
  }

  std::optional<Vector> direction;
  double lambda = (x - y).norm();
  if (at_y.gradient.norm() == 0.0) {
    // y is itself stationary; the midpoint step is still a descent step.
    diag.fallback = FallbackReason::DependentGradients;
  } else if (auto frame = build_frame(x, y, at_y.gradient, config.dependence)) {
    diag.cos_theta = frame->cos_theta;
    try {
      direction = center_direction(*frame, config.cos_tolerance);
    } catch (const TangentialGradientError&) {
      diag.fallback = FallbackReason::TangentialGradient;
    }
  } else {
    diag.fallback = FallbackReason::DependentGradients;
  }

  if (!direction) {
    diag.branch = Branch::Midpoint;
    diag.v = 0.0;
    diag.next_value = diag.midpoint_value;
    out.x_next = std::move(midpoint);
    return out;
  }

  diag.branch = Branch::Ellipse;
  const double initial_v = warm_v.value_or(lambda);
  const SemilineResult s = semiline_search(objective, midpoint, diag.midpoint_value, *direction,
                                           config.variant, config, initial_v);
  diag.evaluations += s.evaluations;
  diag.v = s.v;
  if (s.v > 0.0 && s.value <= diag.midpoint_value) {
    diag.next_value = s.value;
    out.x_next = midpoint + s.v * *direction;
  } else {
    diag.v = 0.0;
    diag.next_value = diag.midpoint_value;
    out.x_next = std::move(midpoint);
  }
  return out;
}

StepResult me_step(const Objective& objective, const Vector& x, const SolverConfig& config,
                   std::optional<double> warm_t) {
  const Evaluation e = objective.evaluate(x);
  StepResult r = me_step(objective, x, e.value, e.gradient, config, warm_t);
  r.diagnostics.evaluations += 1;
  return r;
}

SolverRun minimize(const Objective& objective, const Vector& x0, const SolverConfig& config) {
  config.validate();
  if (x0.size() != objective.dimension()) throw InputError("minimize: x0 has the wrong dimension");
  if (!x0.allFinite()) throw InputError("minimize: x0 must be finite");

  SolverRun run;
  run.method = config.variant == Variant::SemilineMin ? "me" : "me-decrease";
  Vector x = x0;
  Evaluation current = objective.evaluate(x);
  run.evaluations = 1;
  std::optional<double> warm_t;
  std::optional<double> warm_v;

  for (int k = 0;; ++k) {
    IterateRecord record;
    record.iteration = k;
    record.value = current.value;
    record.grad_norm = current.gradient.norm();
    record.evaluations = run.evaluations;
    if (config.store_points) record.point = x;

    if (record.grad_norm <= config.epsilon) {
      run.termination = Termination::Converged;
      run.iterates.push_back(std::move(record));
      break;
    }
    if (k >= config.max_iterations) {
      run.termination = Termination::MaxIterations;
      run.iterates.push_back(std::move(record));
      break;
    }

    StepResult step;
    try {
      step = me_step(objective, x, current.value, current.gradient, config, warm_t, warm_v);
      current = objective.evaluate(step.x_next);
      ++run.evaluations;
    } catch (const NumericError& e) {
      run.termination = Termination::NumericError;
      run.message = e.what();
      run.iterates.push_back(std::move(record));
      break;
    }
    const StepDiagnostics& d = step.diagnostics;
    run.evaluations += d.evaluations;
    record.step = d.level.t;
    record.center_offset = d.v;
    record.midpoint_value = d.midpoint_value;
    record.branch = d.branch;
    record.fallback = d.fallback;
    run.iterates.push_back(std::move(record));

    warm_t = d.level.t;
    if (d.v > 0.0) warm_v = d.v;
    x = std::move(step.x_next);
    ++run.iterations;
  }

  run.solution = x;
  run.final_value = current.value;
  run.final_grad_norm = current.gradient.norm();
  return run;
}

}  // namespace ellipcenters
