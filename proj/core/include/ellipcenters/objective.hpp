#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include <Eigen/Dense>

namespace ellipcenters {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct Evaluation {
  double value = 0.0;
  Vector gradient;
};

/// Evaluation contract for a differentiable objective on R^n.
///
/// Implementations hold no mutable state after construction, so a single
/// instance may be evaluated from several threads at once.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual Eigen::Index dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;

  /// Value and gradient together; overridden where the two share work.
  virtual Evaluation evaluate(const Vector& x) const { return {value(x), gradient(x)}; }

  /// Strong-convexity modulus when known.
  virtual std::optional<double> strong_convexity() const { return std::nullopt; }

 protected:
  void require_dimension(const Vector& x) const;
};

/// f(x) = 1/2 x'Ax - b'x with A symmetric positive definite.
class QuadraticProblem final : public Objective {
 public:
  QuadraticProblem(Matrix A, Vector b, std::optional<double> mu = std::nullopt);

  Eigen::Index dimension() const override { return b_.size(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Evaluation evaluate(const Vector& x) const override;
  std::optional<double> strong_convexity() const override { return mu_; }

  const Matrix& matrix() const { return A_; }
  const Vector& rhs() const { return b_; }

 private:
  Matrix A_;
  Vector b_;
  std::optional<double> mu_;
};

/// f(x) = ln(sum_i exp(alpha_i x_i^2)) + sum_i beta_i x_i^2 with positive weights.
///
/// The minimizer is the origin with value ln(n); the modulus is 2 min beta_i.
class LogSumExpProblem final : public Objective {
 public:
  LogSumExpProblem(Vector alpha, Vector beta);

  Eigen::Index dimension() const override { return alpha_.size(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Evaluation evaluate(const Vector& x) const override;
  std::optional<double> strong_convexity() const override { return 2.0 * beta_.minCoeff(); }

  const Vector& alpha() const { return alpha_; }
  const Vector& beta() const { return beta_; }

 private:
  Vector alpha_;
  Vector beta_;
};

/// Max over coordinates of |g_i - central difference_i| / (1 + |g_i|).
double check_gradient(const Objective& objective, const Vector& x, double h);

enum class ProblemKind { Quadratic, LogSumExp };

const char* to_string(ProblemKind kind);
/// Accepts "f1"/"quadratic" and "f2"/"logsumexp".
ProblemKind parse_problem_kind(std::string_view text);

struct GenParams {
  double condition_number = 1000.0;
  double alpha_min = 0.5;
  double alpha_max = 1.5;
  double beta_min = 0.5;
  double beta_max = 1.5;
  // Dense n x n storage guard for quadratic instances.
  std::size_t max_dense_bytes = std::size_t{2} << 30;

  void validate() const;
};

/// A generated problem together with its seeded starting point.
class Instance {
 public:
  using Problem = std::variant<QuadraticProblem, LogSumExpProblem>;

  Instance(ProblemKind kind, std::uint64_t seed, GenParams params, Problem problem, Vector x0);

  ProblemKind kind() const { return kind_; }
  Eigen::Index dimension() const { return objective().dimension(); }
  std::uint64_t seed() const { return seed_; }
  const GenParams& params() const { return params_; }
  const Problem& problem() const { return problem_; }
  const Vector& x0() const { return x0_; }

  const Objective& objective() const;

 private:
  ProblemKind kind_;
  std::uint64_t seed_;
  GenParams params_;
  Problem problem_;
  Vector x0_;
};

/// Deterministic in (kind, n, seed, params).
///
/// Quadratic: A = Q diag(lambda) Q' with lambda log-uniform on [1, kappa] and Q
/// a Haar-distributed orthogonal matrix, b standard Gaussian.
/// Log-sum-exp: alpha, beta uniform on their configured ranges.
/// The starting point is standard Gaussian in both cases.
Instance generate_instance(ProblemKind kind, Eigen::Index n, std::uint64_t seed,
                           const GenParams& params = {});

}  // namespace ellipcenters
