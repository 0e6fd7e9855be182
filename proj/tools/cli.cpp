#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ellipcenters/baselines.hpp"
#include "ellipcenters/bench_harness.hpp"
#include "ellipcenters/ellipse_geometry.hpp"
#include "ellipcenters/errors.hpp"
#include "ellipcenters/me_solver.hpp"
#include "ellipcenters/problem_io.hpp"

namespace ellipcenters::cli {

namespace {

constexpr const char* kThreadsEnv = "ELLIPCENTERS_THREADS";

int default_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

void add_generator_options(CLI::App* cmd, GenParams& params) {
  cmd->add_option("--kappa", params.condition_number, "Condition number target for f1 (>= 1)")
      ->capture_default_str();
  cmd->add_option("--alpha-min", params.alpha_min, "Lower bound of alpha weights for f2")
      ->capture_default_str();
  cmd->add_option("--alpha-max", params.alpha_max, "Upper bound of alpha weights for f2")
      ->capture_default_str();
  cmd->add_option("--beta-min", params.beta_min, "Lower bound of beta weights for f2")
      ->capture_default_str();
  cmd->add_option("--beta-max", params.beta_max, "Upper bound of beta weights for f2")
      ->capture_default_str();
}

// Writes `text` to `path`, or to `out` when path is empty or "-".
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open '" + path + "' for writing");
  file << text;
}

struct GenerateArgs {
  std::string problem = "f2";
  Eigen::Index n = 100;
  std::uint64_t seed = 0;
  GenParams params;
  std::string out;
};

int run_generate(const GenerateArgs& a, std::ostream& out) {
  const Instance instance = generate_instance(parse_problem_kind(a.problem), a.n, a.seed, a.params);
  emit(write_problem_json(instance) + "\n", a.out, out);
  return kSuccess;
}

struct SolveArgs {
  std::string problem_file;
  std::string method = "me";
  double epsilon = 0.01;
  int max_iterations = 1000;
  std::string trace;
};

int run_solve(const SolveArgs& a, std::ostream& out) {
  const Instance instance = load_problem(a.problem_file);
  SolverConfig config;
  config.epsilon = a.epsilon;
  config.max_iterations = a.max_iterations;
  const SolverRun run = run_method(parse_method(a.method), instance.objective(), instance.x0(), config);

  if (!a.trace.empty()) {
    std::ostringstream csv;
    write_trace_csv(run, csv);
    emit(csv.str(), a.trace, out);
  }
  out << "method=" << run.method << '\n'
      << "n=" << instance.dimension() << '\n'
      << "termination=" << to_string(run.termination) << '\n'
      << "iterations=" << run.iterations << '\n'
      << "evaluations=" << run.evaluations << '\n'
      << "final_value=" << format_double(run.final_value) << '\n'
      << "final_grad_norm=" << format_double(run.final_grad_norm) << '\n';
  if (!run.message.empty()) out << "message=" << run.message << '\n';
  return run.termination == Termination::NumericError ? kNumericError : kSuccess;
}

struct BenchArgs {
  std::string problem = "f2";
  std::vector<Eigen::Index> sizes{100};
  int instances = 10;
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  std::vector<std::string> methods{"me", "bb-long", "bb-short"};
  std::string out;
  std::string format = "csv";
  std::string runs_out;
  int max_iterations = 1000;
  int threads = 1;
  bool timing = false;
  GenParams params;
};

int run_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchConfig config;
  config.kind = parse_problem_kind(a.problem);
  config.sizes = a.sizes;
  config.instances_per_size = a.instances;
  config.epsilon = a.epsilon;
  config.base_seed = a.seed;
  config.methods.clear();
  for (const auto& m : a.methods) config.methods.push_back(parse_method(m));
  config.params = a.params;
  config.max_iterations = a.max_iterations;
  config.threads = a.threads;
  config.keep_traces = false;

  const BenchResult result = run_benchmark(config);
  emit(emit_table(result.records, parse_table_format(a.format), a.timing), a.out, out);
  if (!a.runs_out.empty()) emit(emit_run_details(result.runs), a.runs_out, out);

  if (result.any_flagged()) {
    for (const RunDetail& d : result.runs) {
      if (d.run.termination == Termination::NumericError) {
        err << "numeric error: method=" << to_string(d.method) << " n=" << d.n
            << " instance=" << d.instance << ": " << d.run.message << '\n';
      }
    }
    return kNumericError;
  }
  return kSuccess;
}

struct GeometryArgs {
  int samples = 1000;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  std::string out;
};

int run_verify_geometry(const GeometryArgs& a, std::ostream& out, std::ostream& err) {
  if (a.samples < 1) throw InputError("--samples must be >= 1");
  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> lambda_dist(0.1, 10.0);
  std::uniform_real_distribution<double> theta_dist(0.05, std::numbers::pi / 2 - 0.05);
  // m / M: below 1 gives ellipses, above 1 hyperbolas.
  std::uniform_real_distribution<double> ratio_dist(0.0, 1.5);

  std::ostringstream csv;
  csv << "lambda,theta,m,a,b,c,d,classification,u,v,max_residual\n";
  double worst = 0.0;
  int bad_normals = 0;
  for (int i = 0; i < a.samples; ++i) {
    const double lambda = lambda_dist(rng);
    const double theta = theta_dist(rng);
    const double t2 = std::tan(theta) * std::tan(theta);
    const double bound = 4.0 * lambda * (1.0 + t2) / ((t2 + 2.0) * (t2 + 2.0));
    double ratio = ratio_dist(rng);
    if (ratio == 0.0) ratio = 0.5;
    const ConicCheck c = check_fitted_conic(lambda, theta, ratio * bound);
    worst = std::max(worst, c.max_residual());
    if (!c.normals_positive) ++bad_normals;
    csv << format_double(lambda) << ',' << format_double(theta) << ',' << format_double(c.m) << ','
        << format_double(c.coeffs.a) << ',' << format_double(c.coeffs.b) << ','
        << format_double(c.coeffs.c) << ',' << format_double(c.coeffs.d) << ','
        << to_string(c.classification.kind) << ',' << format_double(c.center.u) << ','
        << format_double(c.center.v) << ',' << format_double(c.max_residual()) << '\n';
  }
  emit(csv.str(), a.out, out);
  err << "verify-geometry: samples=" << a.samples << " max_residual=" << format_double(worst)
      << " negative_normal_multipliers=" << bad_normals << '\n';
  return worst <= a.tolerance && bad_normals == 0 ? kSuccess : kNumericError;
}

struct GradcheckArgs {
  std::string problem = "f2";
  std::string problem_file;
  Eigen::Index n = 50;
  std::uint64_t seed = 0;
  int points = 10;
  double h = 1e-6;
  double tolerance = 1e-5;
  GenParams params;
};

int run_gradcheck(const GradcheckArgs& a, std::ostream& out) {
  if (a.points < 1) throw InputError("--points must be >= 1");
  const Instance instance = a.problem_file.empty()
                                ? generate_instance(parse_problem_kind(a.problem), a.n, a.seed, a.params)
                                : load_problem(a.problem_file);
  std::mt19937_64 rng(a.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int p = 0; p < a.points; ++p) {
    Vector x(instance.dimension());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = normal(rng);
    worst = std::max(worst, check_gradient(instance.objective(), x, a.h));
  }
  out << "kind=" << to_string(instance.kind()) << '\n'
      << "n=" << instance.dimension() << '\n'
      << "points=" << a.points << '\n'
      << "max_relative_error=" << format_double(worst) << '\n';
  return worst <= a.tolerance ? kSuccess : kNumericError;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Method of Ellipcenters: solver, baselines and benchmark harness", "ellipcenters"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  app.footer(std::string("Environment: ") + kThreadsEnv + " sets the default bench thread count.");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a seeded problem instance as JSON");
  generate->add_option("--problem", gen.problem, "Problem family: f1 (quadratic) or f2 (log-sum-exp)")
      ->check(CLI::IsMember({"f1", "f2", "quadratic", "logsumexp"}))
      ->capture_default_str();
  generate->add_option("--n", gen.n, "Dimension")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  generate->add_option("--out", gen.out, "Output JSON path (stdout if omitted)");
  add_generator_options(generate, gen.params);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Minimize a problem file and optionally write a trace");
  solve->add_option("--problem", solve_args.problem_file, "Problem JSON file")->required();
  solve->add_option("--method", solve_args.method, "me | me-decrease | bb-long | bb-short | gd")
      ->check(CLI::IsMember({"me", "me-decrease", "bb-long", "bb-short", "gd"}))
      ->capture_default_str();
  solve->add_option("--epsilon", solve_args.epsilon, "Stop when |grad f| <= epsilon")
      ->capture_default_str();
  solve->add_option("--max-iterations", solve_args.max_iterations, "Iteration cap")
      ->capture_default_str();
  solve->add_option("--trace", solve_args.trace,
                    "Trace CSV path (iter,f,grad_norm,t_k,v_k,branch); '-' for stdout");

  BenchArgs bench_args;
  bench_args.threads = default_threads();
  auto* bench = app.add_subcommand("bench", "Run the seeded multi-instance benchmark");
  bench->add_option("--problem", bench_args.problem, "f1 or f2")
      ->check(CLI::IsMember({"f1", "f2", "quadratic", "logsumexp"}))
      ->capture_default_str();
  bench->add_option("--sizes", bench_args.sizes, "Comma-separated problem sizes")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--instances", bench_args.instances, "Instances per size")->capture_default_str();
  bench->add_option("--epsilon", bench_args.epsilon, "Gradient-norm stopping tolerance")
      ->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "Base seed; instance i uses seed + i")
      ->capture_default_str();
  bench->add_option("--methods", bench_args.methods, "Comma-separated methods")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--out", bench_args.out, "Table output path (stdout if omitted)");
  bench->add_option("--format", bench_args.format, "csv or markdown")
      ->check(CLI::IsMember({"csv", "markdown", "md"}))
      ->capture_default_str();
  bench->add_option("--runs-out", bench_args.runs_out, "Per-run detail CSV path");
  bench->add_option("--max-iterations", bench_args.max_iterations, "Iteration cap per run")
      ->capture_default_str();
  bench->add_option("--threads", bench_args.threads,
                    std::string("Worker threads (default from ") + kThreadsEnv + ", else 1)")
      ->capture_default_str();
  bench->add_flag("--timing", bench_args.timing,
                  "Fill the mean_wall_time_ms column (output is then not reproducible)");
  add_generator_options(bench, bench_args.params);

  GeometryArgs geo;
  auto* verify = app.add_subcommand("verify-geometry",
                                    "Sample fitted conics and report residuals as CSV");
  verify->add_option("--samples", geo.samples, "Number of (lambda, theta, m) samples")
      ->capture_default_str();
  verify->add_option("--seed", geo.seed, "Seed")->capture_default_str();
  verify->add_option("--tolerance", geo.tolerance, "Residual threshold for exit code 0")
      ->capture_default_str();
  verify->add_option("--out", geo.out, "CSV path (stdout if omitted)");

  GradcheckArgs grad;
  auto* gradcheck = app.add_subcommand("gradcheck",
                                       "Compare analytic gradients with central differences");
  gradcheck->add_option("--problem", grad.problem, "f1 or f2 (generated)")
      ->check(CLI::IsMember({"f1", "f2", "quadratic", "logsumexp"}))
      ->capture_default_str();
  gradcheck->add_option("--problem-file", grad.problem_file, "Problem JSON file instead of generating");
  gradcheck->add_option("--n", grad.n, "Dimension of the generated problem")->capture_default_str();
  gradcheck->add_option("--seed", grad.seed, "Seed for the problem and sample points")
      ->capture_default_str();
  gradcheck->add_option("--points", grad.points, "Number of random points")->capture_default_str();
  gradcheck->add_option("--step", grad.h, "Central-difference step h")->capture_default_str();
  gradcheck->add_option("--tolerance", grad.tolerance, "Threshold for exit code 0")
      ->capture_default_str();
  add_generator_options(gradcheck, grad.params);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*generate) return run_generate(gen, out);
    if (*solve) return run_solve(solve_args, out);
    if (*bench) return run_bench(bench_args, out, err);
    if (*verify) return run_verify_geometry(geo, out, err);
    if (*gradcheck) return run_gradcheck(grad, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  err << app.help();
  return kUsageError;
}

}  // namespace ellipcenters::cli
