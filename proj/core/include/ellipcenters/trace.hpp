#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "ellipcenters/objective.hpp"

namespace ellipcenters {

enum class Branch {
  None,      // terminal record, no step taken
  Ellipse,   // next iterate on the semiline of centers
  Midpoint,  // dependent or tangential gradients: (x + y) / 2
  Gradient,  // baseline methods
};

enum class FallbackReason { None, DependentGradients, TangentialGradient };

enum class Termination { Converged, MaxIterations, NumericError };

const char* to_string(Branch branch);
const char* to_string(FallbackReason reason);
const char* to_string(Termination termination);

/// One row of an iteration trace. Step fields describe the move away from
/// this iterate and are NaN on the terminal record.
struct IterateRecord {
  int iteration = 0;
  double value = 0.0;
  double grad_norm = 0.0;
  double step = std::numeric_limits<double>::quiet_NaN();           // t_k or the baseline step size
  double center_offset = std::numeric_limits<double>::quiet_NaN();  // v_k
  double midpoint_value = std::numeric_limits<double>::quiet_NaN();  // f(z_k)
  Branch branch = Branch::None;
  FallbackReason fallback = FallbackReason::None;
  long evaluations = 0;  // cumulative at the time this iterate was reached
  Vector point;          // empty unless points are stored
};

struct SolverRun {
  std::string method;
  std::vector<IterateRecord> iterates;
  Termination termination = Termination::MaxIterations;
  std::string message;
  Vector solution;
  double final_value = 0.0;
  double final_grad_norm = 0.0;
  int iterations = 0;     // number of x-updates performed
  long evaluations = 0;   // objective evaluations (value or value+gradient)
};

/// Columns: iter,f,grad_norm,t_k,v_k,branch. Unset fields are left empty.
void write_trace_csv(const SolverRun& run, std::ostream& out);

/// Shortest round-trip decimal rendering, independent of the C locale.
std::string format_double(double value);
/// `digits` significant digits, general notation, locale independent.
std::string format_double(double value, int digits);

}  // namespace ellipcenters
