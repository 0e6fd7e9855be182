#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "ellipcenters/objective.hpp"

namespace ellipcenters::testing {

inline QuadraticProblem diagonal_quadratic(std::initializer_list<double> diag,
                                           std::initializer_list<double> b = {}) {
  Vector d = Eigen::Map<const Vector>(diag.begin(), static_cast<Eigen::Index>(diag.size()));
  Vector rhs = Vector::Zero(d.size());
  if (b.size() != 0) rhs = Eigen::Map<const Vector>(b.begin(), static_cast<Eigen::Index>(b.size()));
  return QuadraticProblem(d.asDiagonal().toDenseMatrix(), rhs, d.minCoeff());
}

// Random 2x2 SPD matrix with eigenvalues in [1, 1 + spread].
inline Matrix random_spd2(std::mt19937_64& rng, double spread = 50.0) {
  std::uniform_real_distribution<double> eig(1.0, 1.0 + spread);
  std::uniform_real_distribution<double> angle(0.0, 3.141592653589793);
  const double phi = angle(rng);
  Eigen::Matrix2d Q;
  Q << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  const Eigen::Vector2d l(eig(rng), eig(rng));
  Matrix A = Q * l.asDiagonal() * Q.transpose();
  return 0.5 * (A + A.transpose());
}

inline Vector gaussian(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

/// Objective defined by callables; for edge cases the shipped families can't hit.
class LambdaObjective final : public Objective {
 public:
  LambdaObjective(Eigen::Index n, std::function<double(const Vector&)> f,
                  std::function<Vector(const Vector&)> g)
      : n_(n), f_(std::move(f)), g_(std::move(g)) {}

  Eigen::Index dimension() const override { return n_; }
  double value(const Vector& x) const override { return f_(x); }
  Vector gradient(const Vector& x) const override { return g_(x); }

 private:
  Eigen::Index n_;
  std::function<double(const Vector&)> f_;
  std::function<Vector(const Vector&)> g_;
};

}  // namespace ellipcenters::testing
