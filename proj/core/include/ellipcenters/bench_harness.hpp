#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ellipcenters/objective.hpp"
#include "ellipcenters/trace.hpp"

namespace ellipcenters {

enum class Method { ME, MEDecrease, BBLong, BBShort, GD };

const char* to_string(Method method);
/// "me", "me-decrease", "bb-long", "bb-short", "gd".
Method parse_method(std::string_view text);

struct SolverConfig;

/// Dispatches to minimize / bb_minimize / gd_exact_minimize.
SolverRun run_method(Method method, const Objective& objective, const Vector& x0,
                     const SolverConfig& config);

struct BenchConfig {
  ProblemKind kind = ProblemKind::LogSumExp;
  std::vector<Eigen::Index> sizes;
  int instances_per_size = 10;
  double epsilon = 0.01;
  std::uint64_t base_seed = 0;
  std::vector<Method> methods{Method::ME, Method::BBLong, Method::BBShort};
  GenParams params;
  int max_iterations = 1000;
  int threads = 1;
  // Keep per-iteration records (without points) in the run details.
  bool keep_traces = true;

  void validate() const;
};

struct RunDetail {
  Method method;
  Eigen::Index n = 0;
  int instance = 0;
  std::uint64_t seed = 0;
  std::optional<double> mu;
  double wall_time_ms = 0.0;
  SolverRun run;
};

struct BenchRecord {
  Method method;
  Eigen::Index n = 0;
  double mean_iterations = 0.0;
  double mean_optimal_value = 0.0;
  double mean_final_grad_norm = 0.0;
  double mean_evaluations = 0.0;
  double mean_wall_time_ms = 0.0;
  int runs = 0;
  int flagged = 0;  // runs that ended in NumericError
};

struct BenchResult {
  std::vector<BenchRecord> records;  // sorted by configured method order, then n
  std::vector<RunDetail> runs;       // same order, then instance index

  bool any_flagged() const;
};

/// For every size and instance i, generates the instance with seed
/// base_seed + i and runs every configured method from its shared x0.
/// Output is independent of the thread count.
BenchResult run_benchmark(const BenchConfig& config);

enum class TableFormat { Csv, Markdown };

TableFormat parse_table_format(std::string_view text);

/// CSV header: method,n,mean_iterations,mean_optimal_value,
/// mean_final_grad_norm,mean_evaluations,mean_wall_time_ms
/// Values carry 6 significant digits. The wall-time column is left empty
/// unless include_timing is set, so untimed output is reproducible byte for
/// byte. Markdown rows are grouped by n.
std::string emit_table(std::span<const BenchRecord> records, TableFormat format,
                       bool include_timing = false);

/// One row per run: method,n,instance,seed,iterations,final_value,
/// final_grad_norm,evaluations,termination.
std::string emit_run_details(std::span<const RunDetail> runs);

}  // namespace ellipcenters
