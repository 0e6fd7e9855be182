#pragma once

#include <array>
#include <optional>

#include "ellipcenters/objective.hpp"

namespace ellipcenters {

// Planar conic machinery behind the ellipcenter step.
//
// Local coordinates: origin y, first axis along x - y, second axis along the
// part of -grad f(y) orthogonal to it. In these coordinates x = (lambda, 0),
// y = (0, 0), and the ray y - s grad f(y) leaves the origin at angle theta.

/// Orthonormal frame of the plane spanned at y by x - y and grad f(y).
struct LocalFrame {
  Vector origin;  // y
  Vector e1;      // (x - y) / |x - y|
  Vector e2;      // w / |w|
  Vector w;       // -grad f(y) with its e1 component removed
  double lambda = 0.0;
  double cos_theta = 0.0;
  double sin_theta = 0.0;

  double tan_theta() const { return sin_theta / cos_theta; }

  /// Coordinates of an ambient point projected onto the frame.
  std::array<double, 2> to_local(const Vector& point) const;
};

struct DependenceTolerances {
  double sin_theta = 1e-8;
  double relative_w = 1e-12;
};

/// Builds the frame, or returns nullopt when grad f(y) is (numerically)
/// parallel to x - y; the caller then takes the midpoint step.
///
/// cos(theta) = <x - y, -grad_y> / (|x - y| |grad_y|), clamped to [-1, 1].
/// sin(theta) is taken as |w| / |grad_y|, which equals sqrt(1 - cos^2) but keeps
/// full relative accuracy when theta is small.
std::optional<LocalFrame> build_frame(const Vector& x, const Vector& y, const Vector& grad_y,
                                      const DependenceTolerances& tolerances = {});

/// phi(alpha, beta) = 1/2 (alpha^2 + 2 b alpha beta + a beta^2) + c alpha + d beta
struct ConicCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double operator()(double alpha, double beta) const;
  std::array<double, 2> gradient(double alpha, double beta) const;
  bool is_ellipse() const { return a > b * b; }
};

/// Conic through x = (lambda, 0), y = (0, 0), z = (m, n) whose normals at x
/// and y point along y - x and z - y respectively:
///
///   a = (lambda/m - 1)(cot^2 theta + 1),  b = tan theta / 2,
///   c = -lambda / 2,                      d = -b lambda,
///
/// with tan theta = n / m. Throws InputError unless lambda, m, n > 0.
ConicCoefficients fit_conic(double lambda, double m, double n);

enum class ConicKind { Ellipse, Degenerate, Hyperbola };

const char* to_string(ConicKind kind);

struct ConicClassification {
  ConicKind kind;
  double bound;  // M: the fitted conic is an ellipse iff 0 < m < M
};

/// M = 4 lambda (1 + tan^2 theta) / (tan^2 theta + 2)^2. |m - M| within
/// relative_tolerance * M counts as the degenerate (parabolic) boundary.
ConicClassification classify_conic(double lambda, double theta, double m,
                                   double relative_tolerance = 1e-12);

struct ConicCenter {
  double u = 0.0;
  double v = 0.0;
};

/// Center of a fitted conic, the stationary point of phi:
///   u = (lambda/2)(a - 2b^2)/(a - b^2),  v = (lambda/2) b / (a - b^2).
/// Throws DegenerateConicError when |a - b^2| <= tolerance * max(1, |a|, b^2).
ConicCenter conic_center(const ConicCoefficients& coeffs, double lambda,
                         double tolerance = 1e-14);

/// Ambient direction of the semiline of centers,
///   d = e2 - (sin theta / (2 cos theta)) e1,
/// so the admissible centers are (x + y)/2 + v d for v >= 0 and v is the
/// second local coordinate of the center.
/// Throws TangentialGradientError when cos theta <= cos_tolerance.
Vector center_direction(const LocalFrame& frame, double cos_tolerance = 1e-12);

/// Residual report for the conic fitted at (lambda, theta, m), z = (m, m tan theta).
struct ConicCheck {
  double lambda = 0.0;
  double theta = 0.0;
  double m = 0.0;
  ConicCoefficients coeffs;
  ConicClassification classification{ConicKind::Ellipse, 0.0};
  ConicCenter center;           // NaN when degenerate
  double interpolation = 0.0;   // max |phi| at x, y, z over (1 + lambda^2)
  double normals = 0.0;         // sine of the angle between grad phi and the required normals
  bool normals_positive = true;
  double line_of_centers = 0.0; // |u - (lambda/2 - tan(theta)/2 v)| / (1 + |u|)

  double max_residual() const;
};

ConicCheck check_fitted_conic(double lambda, double theta, double m);

}  // namespace ellipcenters
