#pragma once

#include "ellipcenters/me_solver.hpp"

namespace ellipcenters {

enum class BBStep { Long, Short };

/// Barzilai-Borwein step from the last displacement s and gradient change g:
/// <s,s>/<s,g> (Long) or <s,g>/<g,g> (Short).
/// Throws NumericError when <s,g> <= 0 or the step exceeds max_step.
double bb_step_size(const Vector& s, const Vector& g, BBStep kind, double max_step = 1e12);

/// Plain (nonmonotone) Barzilai-Borwein gradient method. The first step is
/// an exact line search along -grad f(x0). Uses the same stopping rule and
/// iteration convention as minimize(); only epsilon, max_iterations, the
/// line-search tolerance, inner budget and store_points are read from config.
SolverRun bb_minimize(const Objective& objective, const Vector& x0, BBStep kind,
                      const SolverConfig& config = {});

/// Steepest descent with exact line search.
SolverRun gd_exact_minimize(const Objective& objective, const Vector& x0,
                            const SolverConfig& config = {});

}  // namespace ellipcenters
