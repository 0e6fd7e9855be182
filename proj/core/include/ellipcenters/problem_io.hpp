#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ellipcenters/objective.hpp"

namespace ellipcenters {

/// JSON document layout:
///
///   {"kind": "quadratic" | "logsumexp", "n": int, "seed": int,
///    "params": {...GenParams...}, "mu": real,
///    "matrix": [row-major n*n], "b": [n]          (quadratic)
///    "alpha": [n], "beta": [n]                    (logsumexp)
///    "x0": [n]}
///
/// Doubles are written with round-trip precision, so reading a written
/// document reproduces the instance bit for bit.
std::string write_problem_json(const Instance& instance);
Instance read_problem_json(std::string_view text);

void save_problem(const Instance& instance, const std::filesystem::path& path);
Instance load_problem(const std::filesystem::path& path);

}  // namespace ellipcenters
