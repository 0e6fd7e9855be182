#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "ellipcenters/errors.hpp"
#include "ellipcenters/objective.hpp"
#include "oracles/test_objectives.hpp"

namespace ec = ellipcenters;
using ec::Vector;
using ec::testing::diagonal_quadratic;
using ec::testing::gaussian;

namespace {

ec::LogSumExpProblem unit_logsumexp(Eigen::Index n) {
  return ec::LogSumExpProblem(Vector::Ones(n), Vector::Ones(n));
}

// Adds a fixed bias to the gradient of another objective.
class BiasedGradient final : public ec::Objective {
 public:
  BiasedGradient(const ec::Objective& inner, double bias) : inner_(inner), bias_(bias) {}
  Eigen::Index dimension() const override { return inner_.dimension(); }
  double value(const Vector& x) const override { return inner_.value(x); }
  Vector gradient(const Vector& x) const override {
    return inner_.gradient(x) + Vector::Constant(x.size(), bias_);
  }

 private:
  const ec::Objective& inner_;
  double bias_;
};

}  // namespace

TEST(Quadratic, IdentityValueAndGradient) {
  const auto p = diagonal_quadratic({1.0, 1.0});
  const Vector x{{3.0, 4.0}};
  EXPECT_DOUBLE_EQ(p.value(x), 12.5);
  EXPECT_EQ(p.gradient(x), x);
  const auto e = p.evaluate(x);
  EXPECT_DOUBLE_EQ(e.value, 12.5);
  EXPECT_EQ(e.gradient, x);
}

TEST(Quadratic, MinimizerOfDiagonalProblem) {
  const auto p = diagonal_quadratic({1.0, 4.0}, {1.0, 1.0});
  const Vector x{{1.0, 0.25}};
  EXPECT_NEAR(p.gradient(x).norm(), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(p.value(x), -0.625);
}

TEST(Quadratic, GradientVanishesWhenRhsIsImageOfPoint) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = ec::generate_instance(ec::ProblemKind::Quadratic, 6, 100 + trial);
    const auto& A = std::get<ec::QuadraticProblem>(inst.problem()).matrix();
    const Vector x = gaussian(6, rng);
    const ec::QuadraticProblem p(A, A * x);
    EXPECT_LE(p.gradient(x).norm(), 1e-11 * (1.0 + (A * x).norm()));
  }
}

TEST(Quadratic, RejectsBadInput) {
  const auto p = diagonal_quadratic({1.0, 2.0});
  EXPECT_THROW(p.value(Vector::Zero(3)), ec::InputError);
  EXPECT_THROW(p.gradient(Vector::Zero(1)), ec::InputError);

  ec::Matrix asym(2, 2);
  asym << 1.0, 0.5, 0.0, 1.0;
  EXPECT_THROW(ec::QuadraticProblem(asym, Vector::Zero(2)), ec::InputError);
  EXPECT_THROW(ec::QuadraticProblem(ec::Matrix::Identity(2, 2), Vector::Zero(3)), ec::InputError);
}

TEST(Quadratic, ValueAtMinimizerIsHalfInnerProduct) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = ec::generate_instance(ec::ProblemKind::Quadratic, 30, seed);
    const auto& p = std::get<ec::QuadraticProblem>(inst.problem());
    const Vector xs = p.matrix().ldlt().solve(p.rhs());
    const double scale = 1.0 + std::abs(p.rhs().dot(xs));
    EXPECT_NEAR(p.value(xs) + 0.5 * p.rhs().dot(xs), 0.0, 1e-10 * scale);
  }
}

TEST(LogSumExp, OriginIsMinimizerWithLogN) {
  for (Eigen::Index n : {1, 2, 7, 100, 5000}) {
    const auto inst = ec::generate_instance(ec::ProblemKind::LogSumExp, n, 11);
    const auto& f = inst.objective();
    const Vector zero = Vector::Zero(n);
    EXPECT_NEAR(f.value(zero), std::log(static_cast<double>(n)), 1e-12);
    EXPECT_EQ(f.gradient(zero).norm(), 0.0);
  }
}

TEST(LogSumExp, OneDimensionalCollapse) {
  const auto p = unit_logsumexp(1);
  const Vector x{{2.0}};
  EXPECT_DOUBLE_EQ(p.value(x), 8.0);
  EXPECT_DOUBLE_EQ(p.gradient(x)[0], 8.0);
}

TEST(LogSumExp, TwoDimensionalHandValue) {
  const auto p = unit_logsumexp(2);
  const Vector x{{1.0, 0.0}};
  const double e = std::exp(1.0);
  const auto ev = p.evaluate(x);
  EXPECT_NEAR(ev.value, std::log(e + 1.0) + 1.0, 1e-14);
  EXPECT_NEAR(ev.value, 2.31326, 1e-5);
  EXPECT_NEAR(ev.gradient[0], 2.0 * e / (e + 1.0) + 2.0, 1e-14);
  EXPECT_NEAR(ev.gradient[0], 3.46212, 1e-5);
  EXPECT_EQ(ev.gradient[1], 0.0);
}

TEST(LogSumExp, LargeExponentsDoNotOverflow) {
  const auto p = unit_logsumexp(3);
  const Vector x{{40.0, 39.0, 0.0}};  // exponents 1600, 1521, 0
  const auto ev = p.evaluate(x);
  ASSERT_TRUE(std::isfinite(ev.value));
  EXPECT_NEAR(ev.value, 1600.0 + std::log1p(std::exp(-79.0)) + 1600.0 + 1521.0, 1e-9);
  EXPECT_TRUE(ev.gradient.allFinite());
  EXPECT_NEAR(ev.gradient[0], 2.0 * 40.0 + 2.0 * 40.0, 1e-9);
}

TEST(LogSumExp, NonFiniteInputIsNumericError) {
  const auto p = unit_logsumexp(2);
  const Vector x{{std::numeric_limits<double>::infinity(), 0.0}};
  EXPECT_THROW(p.value(x), ec::NumericError);
}

TEST(LogSumExp, RejectsNonPositiveWeights) {
  EXPECT_THROW(ec::LogSumExpProblem(Vector{{1.0, 0.0}}, Vector::Ones(2)), ec::InputError);
  EXPECT_THROW(ec::LogSumExpProblem(Vector::Ones(2), Vector{{1.0, -1.0}}), ec::InputError);
  EXPECT_THROW(ec::LogSumExpProblem(Vector::Ones(2), Vector::Ones(3)), ec::InputError);
}

TEST(CheckGradient, QuadraticIsExact) {
  const auto p = diagonal_quadratic({1.0, 4.0});
  EXPECT_LE(ec::check_gradient(p, Vector{{1.0, 1.0}}, 1e-6), 1e-7);
}

TEST(CheckGradient, LogSumExpSample) {
  const auto p = unit_logsumexp(2);
  EXPECT_LE(ec::check_gradient(p, Vector{{1.0, 0.0}}, 1e-6), 1e-5);
}

TEST(CheckGradient, DetectsPerturbedGradient) {
  const auto p = unit_logsumexp(2);
  const BiasedGradient wrong(p, 1e-3);
  EXPECT_GE(ec::check_gradient(wrong, Vector{{1.0, 0.0}}, 1e-6), 5e-4);
}

TEST(CheckGradient, RejectsNonPositiveStep) {
  const auto p = unit_logsumexp(2);
  EXPECT_THROW(ec::check_gradient(p, Vector::Zero(2), 0.0), ec::InputError);
}

TEST(CheckGradient, GeneratedInstancesAtRandomPoints) {
  for (auto kind : {ec::ProblemKind::Quadratic, ec::ProblemKind::LogSumExp}) {
    const auto inst = ec::generate_instance(kind, 20, 5);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
      const Vector x = gaussian(20, rng);
      EXPECT_LE(ec::check_gradient(inst.objective(), x, 1e-6), 1e-5) << ec::to_string(kind);
    }
  }
}

TEST(StrongMonotonicity, SampledPairs) {
  for (auto kind : {ec::ProblemKind::Quadratic, ec::ProblemKind::LogSumExp}) {
    const auto inst = ec::generate_instance(kind, 15, 21);
    const auto& f = inst.objective();
    const double mu = f.strong_convexity().value();
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
      const Vector x = gaussian(15, rng);
      const Vector y = gaussian(15, rng);
      const double lhs = (f.gradient(y) - f.gradient(x)).dot(y - x);
      EXPECT_GE(lhs, mu * (x - y).squaredNorm() - 1e-9 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST(Generate, DeterministicInSeed) {
  for (auto kind : {ec::ProblemKind::Quadratic, ec::ProblemKind::LogSumExp}) {
    const auto a = ec::generate_instance(kind, 12, 42);
    const auto b = ec::generate_instance(kind, 12, 42);
    const auto c = ec::generate_instance(kind, 12, 43);
    EXPECT_EQ(a.x0(), b.x0());
    EXPECT_NE(a.x0(), c.x0());
    if (kind == ec::ProblemKind::Quadratic) {
      const auto& pa = std::get<ec::QuadraticProblem>(a.problem());
      const auto& pb = std::get<ec::QuadraticProblem>(b.problem());
      EXPECT_EQ(pa.matrix(), pb.matrix());
      EXPECT_EQ(pa.rhs(), pb.rhs());
    } else {
      const auto& pa = std::get<ec::LogSumExpProblem>(a.problem());
      const auto& pb = std::get<ec::LogSumExpProblem>(b.problem());
      EXPECT_EQ(pa.alpha(), pb.alpha());
      EXPECT_EQ(pa.beta(), pb.beta());
    }
  }
}

TEST(Generate, QuadraticSpectrumWithinConditionRange) {
  ec::GenParams params;
  params.condition_number = 100.0;
  const auto inst = ec::generate_instance(ec::ProblemKind::Quadratic, 100, 8, params);
  const auto& A = std::get<ec::QuadraticProblem>(inst.problem()).matrix();
  EXPECT_LE((A - A.transpose()).cwiseAbs().maxCoeff(), 1e-12 * A.cwiseAbs().maxCoeff());
  const Eigen::SelfAdjointEigenSolver<ec::Matrix> eig(A);
  EXPECT_GE(eig.eigenvalues().minCoeff(), 1.0 - 1e-8);
  EXPECT_LE(eig.eigenvalues().maxCoeff(), 100.0 + 1e-8);
  EXPECT_NEAR(inst.objective().strong_convexity().value(), eig.eigenvalues().minCoeff(), 1e-8);
}

TEST(Generate, LogSumExpWeightsPositiveAndInRange) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = ec::generate_instance(ec::ProblemKind::LogSumExp, 50, seed);
    const auto& p = std::get<ec::LogSumExpProblem>(inst.problem());
    EXPECT_GT(p.alpha().minCoeff(), 0.0);
    EXPECT_GT(p.beta().minCoeff(), 0.0);
    EXPECT_GE(p.alpha().minCoeff(), 0.5);
    EXPECT_LE(p.beta().maxCoeff(), 1.5);
    EXPECT_DOUBLE_EQ(p.strong_convexity().value(), 2.0 * p.beta().minCoeff());
  }
}

TEST(Generate, RejectsInvalidParameters) {
  ec::GenParams bad_kappa;
  bad_kappa.condition_number = 0.5;
  EXPECT_THROW(ec::generate_instance(ec::ProblemKind::Quadratic, 4, 0, bad_kappa), ec::InputError);

  ec::GenParams bad_range;
  bad_range.alpha_min = 0.0;
  EXPECT_THROW(ec::generate_instance(ec::ProblemKind::LogSumExp, 4, 0, bad_range), ec::InputError);

  ec::GenParams inverted;
  inverted.beta_min = 2.0;
  inverted.beta_max = 1.0;
  EXPECT_THROW(ec::generate_instance(ec::ProblemKind::LogSumExp, 4, 0, inverted), ec::InputError);

  EXPECT_THROW(ec::generate_instance(ec::ProblemKind::LogSumExp, 0, 0), ec::InputError);
}

TEST(Generate, DenseMemoryGuard) {
  ec::GenParams small;
  small.max_dense_bytes = 1000;
  EXPECT_THROW(ec::generate_instance(ec::ProblemKind::Quadratic, 100, 0, small), ec::InputError);
  EXPECT_NO_THROW(ec::generate_instance(ec::ProblemKind::LogSumExp, 100, 0, small));
}

TEST(ProblemKind, ParsesAliases) {
  EXPECT_EQ(ec::parse_problem_kind("f1"), ec::ProblemKind::Quadratic);
  EXPECT_EQ(ec::parse_problem_kind("quadratic"), ec::ProblemKind::Quadratic);
  EXPECT_EQ(ec::parse_problem_kind("f2"), ec::ProblemKind::LogSumExp);
  EXPECT_EQ(ec::parse_problem_kind("logsumexp"), ec::ProblemKind::LogSumExp);
  EXPECT_THROW(ec::parse_problem_kind("f3"), ec::InputError);
}

TEST(Concurrency, SharedEvaluationMatchesSerial) {
  const auto inst = ec::generate_instance(ec::ProblemKind::LogSumExp, 200, 1);
  const auto& f = inst.objective();
  std::mt19937_64 rng(2);
  std::vector<Vector> points;
  for (int i = 0; i < 16; ++i) points.push_back(gaussian(200, rng));
  std::vector<double> serial;
  for (const auto& p : points) serial.push_back(f.value(p));

  std::vector<double> parallel(points.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < 4; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < points.size(); i += 4) parallel[i] = f.value(points[i]);
      });
    }
  }
  EXPECT_EQ(serial, parallel);
}
