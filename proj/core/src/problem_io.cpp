#include "ellipcenters/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ellipcenters/errors.hpp"

namespace ellipcenters {

using nlohmann::json;

namespace {

json to_array(const Vector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Vector from_array(const json& doc, const char* key, Eigen::Index expected) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw InputError(std::string("problem file: missing array '") + key + "'");
  }
  const auto values = doc.at(key).get<std::vector<double>>();
  if (static_cast<Eigen::Index>(values.size()) != expected) {
    throw InputError(std::string("problem file: array '") + key + "' has length " +
                     std::to_string(values.size()) + ", expected " + std::to_string(expected));
  }
  return Eigen::Map<const Vector>(values.data(), expected);
}

}  // namespace

std::string write_problem_json(const Instance& instance) {
  const GenParams& p = instance.params();
  json doc;
  doc["kind"] = to_string(instance.kind());
  doc["n"] = instance.dimension();
  doc["seed"] = instance.seed();
  doc["params"] = {{"condition_number", p.condition_number},
                   {"alpha_min", p.alpha_min},
                   {"alpha_max", p.alpha_max},
                   {"beta_min", p.beta_min},
                   {"beta_max", p.beta_max}};
  if (auto mu = instance.objective().strong_convexity()) doc["mu"] = *mu;

  if (const auto* q = std::get_if<QuadraticProblem>(&instance.problem())) {
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows =
        q->matrix();
    doc["matrix"] = std::vector<double>(rows.data(), rows.data() + rows.size());
    doc["b"] = to_array(q->rhs());
  } else {
    const auto& l = std::get<LogSumExpProblem>(instance.problem());
    doc["alpha"] = to_array(l.alpha());
    doc["beta"] = to_array(l.beta());
  }
  doc["x0"] = to_array(instance.x0());
  return doc.dump();
}

Instance read_problem_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("problem file: ") + e.what());
  }
  try {
    const ProblemKind kind = parse_problem_kind(doc.at("kind").get<std::string>());
    const auto n = doc.at("n").get<Eigen::Index>();
    if (n < 1) throw InputError("problem file: n must be >= 1");
    const auto seed = doc.value<std::uint64_t>("seed", 0);

    GenParams params;
    if (doc.contains("params")) {
      const json& jp = doc.at("params");
      params.condition_number = jp.value("condition_number", params.condition_number);
      params.alpha_min = jp.value("alpha_min", params.alpha_min);
      params.alpha_max = jp.value("alpha_max", params.alpha_max);
      params.beta_min = jp.value("beta_min", params.beta_min);
      params.beta_max = jp.value("beta_max", params.beta_max);
    }
    Vector x0 = from_array(doc, "x0", n);

    if (kind == ProblemKind::Quadratic) {
      const Vector flat = from_array(doc, "matrix", n * n);
      Matrix A = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                Eigen::RowMajor>>(flat.data(), n, n);
      std::optional<double> mu;
      if (doc.contains("mu")) mu = doc.at("mu").get<double>();
      return Instance(kind, seed, params,
                      QuadraticProblem(std::move(A), from_array(doc, "b", n), mu), std::move(x0));
    }
    return Instance(kind, seed, params,
                    LogSumExpProblem(from_array(doc, "alpha", n), from_array(doc, "beta", n)),
                    std::move(x0));
  } catch (const json::exception& e) {
    throw InputError(std::string("problem file: ") + e.what());
  }
}

void save_problem(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  out << write_problem_json(instance) << '\n';
}

Instance load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open problem file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return read_problem_json(buffer.str());
}

}  // namespace ellipcenters
