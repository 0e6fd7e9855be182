#include "ellipcenters/trace.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace ellipcenters {

const char* to_string(Branch branch) {
  switch (branch) {
    case Branch::None:
      return "";
    case Branch::Ellipse:
      return "ellipse";
    case Branch::Midpoint:
      return "midpoint";
    case Branch::Gradient:
      return "gradient";
  }
  return "";
}

const char* to_string(FallbackReason reason) {
  switch (reason) {
    case FallbackReason::None:
      return "none";
    case FallbackReason::DependentGradients:
      return "dependent-gradients";
    case FallbackReason::TangentialGradient:
      return "tangential-gradient";
  }
  return "none";
}

const char* to_string(Termination termination) {
  switch (termination) {
    case Termination::Converged:
      return "converged";
    case Termination::MaxIterations:
      return "max-iterations";
    case Termination::NumericError:
      return "numeric-error";
  }
  return "unknown";
}

std::string format_double(double value) {
  if (std::isnan(value)) return "";
  if (value == 0.0) value = 0.0;
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc{} ? std::string(buf, end) : std::string{};
}

std::string format_double(double value, int digits) {
  if (std::isnan(value)) return "";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
  return ec == std::errc{} ? std::string(buf, end) : std::string{};
}

void write_trace_csv(const SolverRun& run, std::ostream& out) {
  out << "iter,f,grad_norm,t_k,v_k,branch\n";
  for (const IterateRecord& r : run.iterates) {
    out << r.iteration << ',' << format_double(r.value) << ',' << format_double(r.grad_norm)
        << ',' << format_double(r.step) << ',' << format_double(r.center_offset) << ','
        << to_string(r.branch) << '\n';
  }
}

}  // namespace ellipcenters
