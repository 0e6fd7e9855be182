#include "ellipcenters/objective.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ellipcenters/errors.hpp"

namespace ellipcenters {

void Objective::require_dimension(const Vector& x) const {
  if (x.size() != dimension()) {
    throw InputError("dimension mismatch: objective has n=" + std::to_string(dimension()) +
                     ", point has " + std::to_string(x.size()));
  }
}

// ---------------------------------------------------------------------------
// Quadratic

QuadraticProblem::QuadraticProblem(Matrix A, Vector b, std::optional<double> mu)
    : A_(std::move(A)), b_(std::move(b)), mu_(mu) {
  if (A_.rows() != A_.cols() || A_.rows() != b_.size() || b_.size() == 0) {
    throw InputError("quadratic problem: A must be n x n and b of length n >= 1");
  }
  const double scale = std::max(1.0, A_.cwiseAbs().maxCoeff());
  if ((A_ - A_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InputError("quadratic problem: A is not symmetric");
  }
  if (mu_ && !(*mu_ > 0.0)) {
    throw InputError("quadratic problem: strong-convexity modulus must be positive");
  }
}

double QuadraticProblem::value(const Vector& x) const {
  require_dimension(x);
  return 0.5 * x.dot(A_ * x) - b_.dot(x);
}

Vector QuadraticProblem::gradient(const Vector& x) const {
  require_dimension(x);
  return A_ * x - b_;
}

Evaluation QuadraticProblem::evaluate(const Vector& x) const {
  require_dimension(x);
  Vector Ax = A_ * x;
  const double v = 0.5 * x.dot(Ax) - b_.dot(x);
  return {v, Ax - b_};
}

// ---------------------------------------------------------------------------
// Log-sum-exp of scaled squares

LogSumExpProblem::LogSumExpProblem(Vector alpha, Vector beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.size() == 0 || alpha_.size() != beta_.size()) {
    throw InputError("log-sum-exp problem: alpha and beta must have equal length n >= 1");
  }
  if (!(alpha_.minCoeff() > 0.0) || !(beta_.minCoeff() > 0.0) || !alpha_.allFinite() ||
      !beta_.allFinite()) {
    throw InputError("log-sum-exp problem: weights must be positive and finite");
  }
}

namespace {

// Shifted exponentials exp(alpha_i x_i^2 - max) and their sum.
struct ShiftedTerms {
  Vector weights;
  double shift;
  double sum;
};

ShiftedTerms shifted_terms(const Vector& alpha, const Vector& x) {
  Vector exponents = alpha.cwiseProduct(x.cwiseAbs2());
  const double shift = exponents.maxCoeff();
  if (!std::isfinite(shift)) {
    throw NumericError("log-sum-exp: exponent is not finite");
  }
  Vector weights = (exponents.array() - shift).exp().matrix();
  const double sum = weights.sum();
  return {std::move(weights), shift, sum};
}

}  // namespace

double LogSumExpProblem::value(const Vector& x) const {
  require_dimension(x);
  const ShiftedTerms t = shifted_terms(alpha_, x);
  const double v = t.shift + std::log(t.sum) + beta_.dot(x.cwiseAbs2());
  if (!std::isfinite(v)) throw NumericError("log-sum-exp: value is not finite");
  return v;
}

Vector LogSumExpProblem::gradient(const Vector& x) const {
  return evaluate(x).gradient;
}

Evaluation LogSumExpProblem::evaluate(const Vector& x) const {
  require_dimension(x);
  const ShiftedTerms t = shifted_terms(alpha_, x);
  const double v = t.shift + std::log(t.sum) + beta_.dot(x.cwiseAbs2());
  Vector g = 2.0 * (alpha_.cwiseProduct(t.weights) / t.sum + beta_).cwiseProduct(x);
  if (!std::isfinite(v) || !g.allFinite()) {
    throw NumericError("log-sum-exp: evaluation is not finite");
  }
  return {v, std::move(g)};
}

// ---------------------------------------------------------------------------

double check_gradient(const Objective& objective, const Vector& x, double h) {
  if (!(h > 0.0)) throw InputError("check_gradient: step must be positive");
  if (!x.allFinite()) throw InputError("check_gradient: point must be finite");
  const Vector g = objective.gradient(x);
  Vector probe = x;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = objective.value(probe);
    probe[i] = x[i] - h;
    const double down = objective.value(probe);
    probe[i] = x[i];
    const double fd = (up - down) / (2.0 * h);
    worst = std::max(worst, std::abs(g[i] - fd) / (1.0 + std::abs(g[i])));
  }
  return worst;
}

const char* to_string(ProblemKind kind) {
  return kind == ProblemKind::Quadratic ? "quadratic" : "logsumexp";
}

ProblemKind parse_problem_kind(std::string_view text) {
  if (text == "f1" || text == "quadratic") return ProblemKind::Quadratic;
  if (text == "f2" || text == "logsumexp") return ProblemKind::LogSumExp;
  throw InputError("unknown problem kind '" + std::string(text) + "' (expected f1 or f2)");
}

void GenParams::validate() const {
  if (!(condition_number >= 1.0) || !std::isfinite(condition_number)) {
    throw InputError("condition number must be finite and >= 1");
  }
  if (!(alpha_min > 0.0) || !(alpha_max >= alpha_min) || !std::isfinite(alpha_max)) {
    throw InputError("alpha range must satisfy 0 < min <= max");
  }
  if (!(beta_min > 0.0) || !(beta_max >= beta_min) || !std::isfinite(beta_max)) {
    throw InputError("beta range must satisfy 0 < min <= max");
  }
}

Instance::Instance(ProblemKind kind, std::uint64_t seed, GenParams params, Problem problem,
                   Vector x0)
    : kind_(kind), seed_(seed), params_(params), problem_(std::move(problem)), x0_(std::move(x0)) {
  if (x0_.size() != objective().dimension()) {
    throw InputError("instance: starting point has the wrong dimension");
  }
}

const Objective& Instance::objective() const {
  return std::visit([](const auto& p) -> const Objective& { return p; }, problem_);
}

namespace {

Vector gaussian_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

Vector uniform_vector(Eigen::Index n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(lo, hi);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = lo == hi ? lo : uniform(rng);
  return v;
}

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the signs
// of R's diagonal folded into Q.
Matrix random_orthogonal(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix G(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) G(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  const Matrix& R = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  }
  return Q;
}

}  // namespace

Instance generate_instance(ProblemKind kind, Eigen::Index n, std::uint64_t seed,
                           const GenParams& params) {
  if (n < 1) throw InputError("instance dimension must be >= 1");
  params.validate();
  std::mt19937_64 rng(seed);

  if (kind == ProblemKind::Quadratic) {
    const auto bytes = static_cast<double>(n) * static_cast<double>(n) * sizeof(double);
    if (bytes > static_cast<double>(params.max_dense_bytes)) {
      throw InputError("quadratic instance with n=" + std::to_string(n) +
                       " exceeds the dense-matrix memory guard");
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_kappa = std::log(params.condition_number);
    Vector spectrum(n);
    for (Eigen::Index i = 0; i < n; ++i) spectrum[i] = std::exp(log_kappa * unit(rng));
    const Matrix Q = random_orthogonal(n, rng);
    Matrix A = Q * spectrum.asDiagonal() * Q.transpose();
    A = 0.5 * (A + A.transpose()).eval();
    Vector b = gaussian_vector(n, rng);
    Vector x0 = gaussian_vector(n, rng);
    const double mu = spectrum.minCoeff();
    return Instance(kind, seed, params, QuadraticProblem(std::move(A), std::move(b), mu),
                    std::move(x0));
  }

  Vector alpha = uniform_vector(n, params.alpha_min, params.alpha_max, rng);
  Vector beta = uniform_vector(n, params.beta_min, params.beta_max, rng);
  Vector x0 = gaussian_vector(n, rng);
  return Instance(kind, seed, params, LogSumExpProblem(std::move(alpha), std::move(beta)),
                  std::move(x0));
}

}  // namespace ellipcenters
