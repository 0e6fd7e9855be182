#include "ellipcenters/ellipse_geometry.hpp"

#include <algorithm>
#include <cmath>

#include "ellipcenters/errors.hpp"

namespace ellipcenters {

std::array<double, 2> LocalFrame::to_local(const Vector& point) const {
  const Vector rel = point - origin;
  return {rel.dot(e1), rel.dot(e2)};
}

std::optional<LocalFrame> build_frame(const Vector& x, const Vector& y, const Vector& grad_y,
                                      const DependenceTolerances& tolerances) {
  if (x.size() != y.size() || x.size() != grad_y.size()) {
    throw InputError("build_frame: dimension mismatch");
  }
  const Vector diff = x - y;
  const double lambda = diff.norm();
  const double grad_norm = grad_y.norm();
  if (!(lambda > 0.0)) throw InputError("build_frame: x and y coincide");
  if (!(grad_norm > 0.0)) throw InputError("build_frame: grad f(y) vanishes");

  const double inner = diff.dot(grad_y);
  Vector w = -grad_y + (inner / (lambda * lambda)) * diff;
  const double w_norm = w.norm();

  LocalFrame frame;
  frame.cos_theta = std::clamp(-inner / (lambda * grad_norm), -1.0, 1.0);
  frame.sin_theta = std::min(1.0, w_norm / grad_norm);
  if (frame.sin_theta <= tolerances.sin_theta || w_norm <= tolerances.relative_w * grad_norm) {
    return std::nullopt;
  }

  frame.origin = y;
  frame.e1 = diff / lambda;
  // Re-orthogonalize once against e1 so <e1, e2> is at rounding level even
  // when the cancellation in w is severe.
  Vector e2 = w / w_norm;
  e2 -= e2.dot(frame.e1) * frame.e1;
  frame.e2 = e2 / e2.norm();
  frame.w = std::move(w);
  frame.lambda = lambda;
  return frame;
}

double ConicCoefficients::operator()(double alpha, double beta) const {
  return 0.5 * (alpha * alpha + 2.0 * b * alpha * beta + a * beta * beta) + c * alpha + d * beta;
}

std::array<double, 2> ConicCoefficients::gradient(double alpha, double beta) const {
  return {alpha + b * beta + c, b * alpha + a * beta + d};
}

ConicCoefficients fit_conic(double lambda, double m, double n) {
  if (!(lambda > 0.0) || !(m > 0.0) || !(n > 0.0)) {
    throw InputError("fit_conic: lambda, m and n must be positive");
  }
  const double tan_theta = n / m;
  const double cot_theta = m / n;
  ConicCoefficients k;
  k.a = (lambda / m - 1.0) * (cot_theta * cot_theta + 1.0);
  k.b = 0.5 * tan_theta;
  k.c = -0.5 * lambda;
  k.d = -k.b * lambda;
  return k;
}

const char* to_string(ConicKind kind) {
  switch (kind) {
    case ConicKind::Ellipse:
      return "ellipse";
    case ConicKind::Degenerate:
      return "degenerate";
    case ConicKind::Hyperbola:
      return "hyperbola";
  }
  return "unknown";
}

ConicClassification classify_conic(double lambda, double theta, double m,
                                   double relative_tolerance) {
  constexpr double half_pi = 1.57079632679489661923;
  if (!(theta > 0.0) || !(theta < half_pi)) {
    throw InputError("classify_conic: theta must lie strictly inside (0, pi/2)");
  }
  if (!(lambda > 0.0) || !(m > 0.0)) {
    throw InputError("classify_conic: lambda and m must be positive");
  }
  const double t2 = std::tan(theta) * std::tan(theta);
  const double bound = 4.0 * lambda * (1.0 + t2) / ((t2 + 2.0) * (t2 + 2.0));
  ConicKind kind = ConicKind::Hyperbola;
  if (std::abs(m - bound) <= relative_tolerance * bound) {
    kind = ConicKind::Degenerate;
  } else if (m < bound) {
    kind = ConicKind::Ellipse;
  }
  return {kind, bound};
}

ConicCenter conic_center(const ConicCoefficients& k, double lambda, double tolerance) {
  const double b2 = k.b * k.b;
  const double gap = k.a - b2;
  if (std::abs(gap) <= tolerance * std::max({1.0, std::abs(k.a), b2})) {
    throw DegenerateConicError("conic_center: a = b^2, the conic has no center");
  }
  return {0.5 * lambda * (k.a - 2.0 * b2) / gap, 0.5 * lambda * k.b / gap};
}

Vector center_direction(const LocalFrame& frame, double cos_tolerance) {
  if (!(frame.cos_theta > cos_tolerance)) {
    throw TangentialGradientError(
        "center_direction: grad f(y) is orthogonal to x - y (or points away), direction undefined");
  }
  return frame.e2 - (frame.sin_theta / (2.0 * frame.cos_theta)) * frame.e1;
}

double ConicCheck::max_residual() const {
  return std::max({interpolation, normals, std::isnan(line_of_centers) ? 0.0 : line_of_centers});
}

namespace {

// |sin| of the angle between two plane vectors, and whether they point the same way.
std::pair<double, bool> alignment(std::array<double, 2> p, std::array<double, 2> q) {
  const double cross = p[0] * q[1] - p[1] * q[0];
  const double dot = p[0] * q[0] + p[1] * q[1];
  const double scale = std::hypot(p[0], p[1]) * std::hypot(q[0], q[1]);
  if (scale == 0.0) return {1.0, false};
  return {std::abs(cross) / scale, dot > 0.0};
}

}  // namespace

ConicCheck check_fitted_conic(double lambda, double theta, double m) {
  ConicCheck r;
  r.lambda = lambda;
  r.theta = theta;
  r.m = m;
  r.classification = classify_conic(lambda, theta, m);
  const double tan_theta = std::tan(theta);
  const double n = m * tan_theta;
  r.coeffs = fit_conic(lambda, m, n);
  const ConicCoefficients& k = r.coeffs;

  const double scale = 1.0 + lambda * lambda;
  r.interpolation =
      std::max({std::abs(k(lambda, 0.0)), std::abs(k(0.0, 0.0)), std::abs(k(m, n))}) / scale;

  // grad phi(x) must point along x - y, grad phi(y) along y - z.
  const auto [sin_x, pos_x] = alignment(k.gradient(lambda, 0.0), {lambda, 0.0});
  const auto [sin_y, pos_y] = alignment(k.gradient(0.0, 0.0), {-m, -n});
  r.normals = std::max(sin_x, sin_y);
  r.normals_positive = pos_x && pos_y;

  try {
    r.center = conic_center(k, lambda);
    r.line_of_centers = std::abs(r.center.u - (0.5 * lambda - 0.5 * tan_theta * r.center.v)) /
                        (1.0 + std::abs(r.center.u));
  } catch (const DegenerateConicError&) {
    r.center = {std::nan(""), std::nan("")};
    r.line_of_centers = std::nan("");
  }
  return r;
}

}  // namespace ellipcenters
