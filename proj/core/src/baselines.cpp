#include "ellipcenters/baselines.hpp"

#include <cmath>

#include "ellipcenters/errors.hpp"
#include "ellipcenters/line_search.hpp"

namespace ellipcenters {

double bb_step_size(const Vector& s, const Vector& g, BBStep kind, double max_step) {
  const double sg = s.dot(g);
  if (!(sg > 0.0)) {
    throw NumericError("Barzilai-Borwein: curvature <s,g> is not positive");
  }
  const double step = kind == BBStep::Long ? s.squaredNorm() / sg : sg / g.squaredNorm();
  if (!std::isfinite(step) || step > max_step) {
    throw NumericError("Barzilai-Borwein: step size exceeds cap");
  }
  return step;
}

namespace {

// Exact minimization of f(x - tau g) over tau >= 0.
RayMinimum exact_gradient_step(const Objective& objective, const Vector& x, double fx,
                               const Vector& g, double initial_step, const SolverConfig& config) {
  auto value = [&](double tau) { return objective.value(x - tau * g); };
  auto slope = [&](double tau) { return -objective.gradient(x - tau * g).dot(g); };
  RayMinimizerOptions options;
  options.initial_step = initial_step;
  options.relative_tolerance = config.linesearch_tolerance;
  options.max_evaluations = config.max_inner_evaluations;
  return minimize_on_ray(value, slope, fx, -g.squaredNorm(), options);
}

// Shared driver: `choose_step` returns tau for iterate k and may throw NumericError.
template <typename ChooseStep>
SolverRun gradient_method(const Objective& objective, const Vector& x0, const SolverConfig& config,
                          std::string method, ChooseStep&& choose_step) {
  config.validate();
  if (x0.size() != objective.dimension()) throw InputError(method + ": x0 has the wrong dimension");
  if (!x0.allFinite()) throw InputError(method + ": x0 must be finite");

  SolverRun run;
  run.method = std::move(method);
  Vector x = x0;
  Evaluation current = objective.evaluate(x);
  run.evaluations = 1;

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

    Vector next;
    Evaluation next_eval;
    try {
      const double tau = choose_step(k, x, current, run.evaluations);
      record.step = tau;
      next = x - tau * current.gradient;
      next_eval = objective.evaluate(next);
      ++run.evaluations;
      if (!std::isfinite(next_eval.value) || !next_eval.gradient.allFinite()) {
        throw NumericError(run.method + ": non-finite iterate");
      }
    } catch (const NumericError& e) {
      run.termination = Termination::NumericError;
      run.message = e.what();
      run.iterates.push_back(std::move(record));
      break;
    }
    record.branch = Branch::Gradient;
    run.iterates.push_back(std::move(record));
    x = std::move(next);
    current = std::move(next_eval);
    ++run.iterations;
  }

  run.solution = x;
  run.final_value = current.value;
  run.final_grad_norm = current.gradient.norm();
  return run;
}

}  // namespace

SolverRun bb_minimize(const Objective& objective, const Vector& x0, BBStep kind,
                      const SolverConfig& config) {
  Vector prev_x;
  Vector prev_g;
  auto choose = [&](int k, const Vector& x, const Evaluation& e, long& evaluations) {
    double tau = 0.0;
    if (k == 0) {
      const RayMinimum m = exact_gradient_step(objective, x, e.value, e.gradient, 1.0, config);
      evaluations += m.evaluations;
      if (!(m.step > 0.0)) throw NumericError("Barzilai-Borwein: first line search made no progress");
      tau = m.step;
    } else {
      tau = bb_step_size(x - prev_x, e.gradient - prev_g, kind);
    }
    prev_x = x;
    prev_g = e.gradient;
    return tau;
  };
  return gradient_method(objective, x0, config, kind == BBStep::Long ? "bb-long" : "bb-short",
                         choose);
}

SolverRun gd_exact_minimize(const Objective& objective, const Vector& x0,
                            const SolverConfig& config) {
  double last_tau = 1.0;
  auto choose = [&](int, const Vector& x, const Evaluation& e, long& evaluations) {
    const RayMinimum m = exact_gradient_step(objective, x, e.value, e.gradient, last_tau, config);
    evaluations += m.evaluations;
    if (!(m.step > 0.0)) throw NumericError("steepest descent: line search made no progress");
    last_tau = m.step;
    return m.step;
  };
  return gradient_method(objective, x0, config, "gd", choose);
}

}  // namespace ellipcenters
