// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bench.hpp"
#include "solvers.hpp"

namespace lpeirl1 {

/// Typed view of a run configuration document. Omitted fields take the
/// reference experiment values: lambda = 0.05, mu = 0.9, beta = 1,
/// eps0 = 1, alpha = 0.9, opttol = 1e-6, sigma2 = 1e-4, p = 1/2, and the
/// desk-scale problem (m, n, K) = (256, 512, 25) with 20 trials.
struct RunConfig {
  ExperimentSpec spec;
  SolverKind solver = SolverKind::Eirl1; // used by single solves
  SolverConfig solver_config;            // config for `solver`
  std::optional<std::vector<AlphaSchedule>> alphas;
  std::string x0 = "gaussian";
};

/// Mutable configuration document: file contents merged with flag
/// overrides, resolved into a RunConfig on demand.
class ConfigDocument {
public:
  ConfigDocument() : doc_(nlohmann::json::object()) {}

  /// Parse errors carry line and column; unknown keys are rejected.
  static ConfigDocument parse(std::string_view text);
  static ConfigDocument load(const std::filesystem::path &path);

  /// Applies `--key value` style overrides. Solver-level keys also replace
  /// the same key in every entry of "solvers"; "solver" replaces the list.
  void set(std::string_view key, std::string_view value);

  /// Throws Config/Specification errors naming the field.
  RunConfig resolve() const;

  const nlohmann::json &json() const noexcept { return doc_; }

private:
  explicit ConfigDocument(nlohmann::json doc) : doc_(std::move(doc)) {}

  nlohmann::json doc_;
};

AlphaSchedule parse_alpha(std::string_view text);

} // namespace lpeirl1
