#include "ellipcenters/bench_harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <sstream>
#include <thread>

#include "ellipcenters/baselines.hpp"
#include "ellipcenters/errors.hpp"
#include "ellipcenters/me_solver.hpp"

namespace ellipcenters {

const char* to_string(Method method) {
  switch (method) {
    case Method::ME:
      return "me";
    case Method::MEDecrease:
      return "me-decrease";
    case Method::BBLong:
      return "bb-long";
    case Method::BBShort:
      return "bb-short";
    case Method::GD:
      return "gd";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  for (Method m : {Method::ME, Method::MEDecrease, Method::BBLong, Method::BBShort, Method::GD}) {
    if (text == to_string(m)) return m;
  }
  throw InputError("unknown method '" + std::string(text) +
                   "' (expected me, me-decrease, bb-long, bb-short or gd)");
}

TableFormat parse_table_format(std::string_view text) {
  if (text == "csv") return TableFormat::Csv;
  if (text == "markdown" || text == "md") return TableFormat::Markdown;
  throw InputError("unknown table format '" + std::string(text) + "'");
}

void BenchConfig::validate() const {
  if (sizes.empty()) throw InputError("bench: at least one size is required");
  if (std::any_of(sizes.begin(), sizes.end(), [](Eigen::Index n) { return n < 1; })) {
    throw InputError("bench: sizes must be positive");
  }
  if (instances_per_size < 1) throw InputError("bench: instances per size must be >= 1");
  if (methods.empty()) throw InputError("bench: at least one method is required");
  if (!(epsilon > 0.0)) throw InputError("bench: epsilon must be positive");
  if (max_iterations < 1) throw InputError("bench: max_iterations must be >= 1");
  params.validate();
}

bool BenchResult::any_flagged() const {
  return std::any_of(records.begin(), records.end(), [](const BenchRecord& r) { return r.flagged > 0; });
}

SolverRun run_method(Method method, const Objective& objective, const Vector& x0,
                     const SolverConfig& config) {
  switch (method) {
    case Method::ME:
      return minimize(objective, x0, config);
    case Method::MEDecrease: {
      SolverConfig c = config;
      c.variant = Variant::DecreaseSearch;
      return minimize(objective, x0, c);
    }
    case Method::BBLong:
      return bb_minimize(objective, x0, BBStep::Long, config);
    case Method::BBShort:
      return bb_minimize(objective, x0, BBStep::Short, config);
    case Method::GD:
      return gd_exact_minimize(objective, x0, config);
  }
  throw InputError("unknown method");
}

namespace {

// Runs all methods on one generated instance.
std::vector<RunDetail> run_instance(const BenchConfig& config, Eigen::Index n, int instance) {
  const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(instance);
  const Instance generated = generate_instance(config.kind, n, seed, config.params);

  SolverConfig solver;
  solver.epsilon = config.epsilon;
  solver.max_iterations = config.max_iterations;
  solver.store_points = false;

  std::vector<RunDetail> out;
  for (Method method : config.methods) {
    RunDetail detail{method, n, instance, seed, generated.objective().strong_convexity(), 0.0, {}};
    const auto start = std::chrono::steady_clock::now();
    detail.run = run_method(method, generated.objective(), generated.x0(), solver);
    detail.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (!config.keep_traces) detail.run.iterates.clear();
    detail.run.solution.resize(0);
    out.push_back(std::move(detail));
  }
  return out;
}

}  // namespace

BenchResult run_benchmark(const BenchConfig& requested) {
  requested.validate();
  BenchConfig config = requested;
  config.sizes.clear();
  for (Eigen::Index n : requested.sizes) {
    if (std::find(config.sizes.begin(), config.sizes.end(), n) == config.sizes.end()) {
      config.sizes.push_back(n);
    }
  }
  config.methods.clear();
  for (Method m : requested.methods) {
    if (std::find(config.methods.begin(), config.methods.end(), m) == config.methods.end()) {
      config.methods.push_back(m);
    }
  }

  struct Job {
    Eigen::Index n;
    int instance;
  };
  std::vector<Job> jobs;
  for (Eigen::Index n : config.sizes) {
    for (int i = 0; i < config.instances_per_size; ++i) jobs.push_back({n, i});
  }

  std::vector<std::vector<RunDetail>> slots(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        slots[j] = run_instance(config, jobs[j].n, jobs[j].instance);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp<int>(config.threads, 1, static_cast<int>(jobs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Fixed order: configured method order, then n in configured order, then instance.
  auto method_rank = [&](Method m) {
    return std::find(config.methods.begin(), config.methods.end(), m) - config.methods.begin();
  };
  BenchResult result;
  for (auto& slot : slots) {
    for (auto& d : slot) result.runs.push_back(std::move(d));
  }
  std::stable_sort(result.runs.begin(), result.runs.end(), [&](const RunDetail& a, const RunDetail& b) {
    return method_rank(a.method) < method_rank(b.method);
  });

  for (Method method : config.methods) {
    for (Eigen::Index n : config.sizes) {
      BenchRecord rec{method, n};
      for (const RunDetail& d : result.runs) {
        if (d.method != method || d.n != n) continue;
        ++rec.runs;
        rec.mean_iterations += d.run.iterations;
        rec.mean_optimal_value += d.run.final_value;
        rec.mean_final_grad_norm += d.run.final_grad_norm;
        rec.mean_evaluations += static_cast<double>(d.run.evaluations);
        rec.mean_wall_time_ms += d.wall_time_ms;
        if (d.run.termination == Termination::NumericError) ++rec.flagged;
      }
      const double count = rec.runs;
      rec.mean_iterations /= count;
      rec.mean_optimal_value /= count;
      rec.mean_final_grad_norm /= count;
      rec.mean_evaluations /= count;
      rec.mean_wall_time_ms /= count;
      result.records.push_back(rec);
    }
  }
  return result;
}

std::string emit_table(std::span<const BenchRecord> records, TableFormat format,
                       bool include_timing) {
  std::ostringstream out;
  auto timing = [&](const BenchRecord& r) {
    return include_timing ? format_double(r.mean_wall_time_ms, 6) : std::string{};
  };

  if (format == TableFormat::Csv) {
    out << "method,n,mean_iterations,mean_optimal_value,mean_final_grad_norm,mean_evaluations,"
           "mean_wall_time_ms\n";
    for (const BenchRecord& r : records) {
      out << to_string(r.method) << ',' << r.n << ',' << format_double(r.mean_iterations, 6) << ','
          << format_double(r.mean_optimal_value, 6) << ','
          << format_double(r.mean_final_grad_norm, 6) << ','
          << format_double(r.mean_evaluations, 6) << ',' << timing(r) << '\n';
    }
    return out.str();
  }

  std::vector<const BenchRecord*> ordered;
  for (const BenchRecord& r : records) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const BenchRecord* a, const BenchRecord* b) { return a->n < b->n; });
  out << "| Method | n | Iterations | Optimal value | Final grad norm | Evaluations |";
  if (include_timing) out << " Wall time (ms) |";
  out << "\n|---|---|---|---|---|---|";
  if (include_timing) out << "---|";
  out << '\n';
  for (const BenchRecord* r : ordered) {
    out << "| " << to_string(r->method) << " | " << r->n << " | "
        << format_double(r->mean_iterations, 6) << " | " << format_double(r->mean_optimal_value, 6)
        << " | " << format_double(r->mean_final_grad_norm, 6) << " | "
        << format_double(r->mean_evaluations, 6) << " |";
    if (include_timing) out << ' ' << timing(*r) << " |";
    out << '\n';
  }
  return out.str();
}

std::string emit_run_details(std::span<const RunDetail> runs) {
  std::ostringstream out;
  out << "method,n,instance,seed,iterations,final_value,final_grad_norm,evaluations,termination\n";
  for (const RunDetail& d : runs) {
    out << to_string(d.method) << ',' << d.n << ',' << d.instance << ',' << d.seed << ','
        << d.run.iterations << ',' << format_double(d.run.final_value) << ','
        << format_double(d.run.final_grad_norm) << ',' << d.run.evaluations << ','
        << to_string(d.run.termination) << '\n';
  }
  return out.str();
}

}  // namespace ellipcenters
