// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "bench.hpp"
#include "diagnostics.hpp"
#include "run_config.hpp"
#include "solvers.hpp"

namespace lpeirl1 {

struct DiagnosticsOptions {
  double beta = 1.0;
  double alpha_bar = 0.0;
  double tail_fraction = 0.5;
};

/// psi-decrease violations, stabilization, tail sums and the step-norm rate
/// fit as one document. Depends only on fields stored in trace CSV files,
/// so a trace read back from disk reproduces it exactly.
nlohmann::json diagnostics_report(const Trace &trace, const DiagnosticsOptions &options);

/// Summary of one solve, including diagnostics when the trace allows them.
nlohmann::json solve_summary(const SolveResult &result, const ProblemInstance &problem,
                             const SolverConfig &config,
                             const std::optional<Vector> &x_true);

/// alpha_bar the psi-decrease check should use for a solver run.
double effective_alpha_bar(SolverKind kind, const SolverConfig &config);

struct BenchOutcome {
  std::size_t total_trials = 0;
  std::size_t failed_trials = 0;
};

/// Runs the experiment (or alpha sweep) described by `config` and writes
/// trials.csv, aggregate.json and one mse_curve_<solver>.csv per solver
/// into out_dir.
BenchOutcome write_bench(const RunConfig &config, const std::filesystem::path &out_dir,
                         unsigned threads);

/// Instance files: A.bin, x_true.bin, y.bin and instance.json.
void write_instance(const Instance &inst, const std::filesystem::path &out_dir,
                    bool with_csv);

/// Reads an instance directory written by write_instance. x_true is empty
/// when x_true.bin is absent; checksums in instance.json are verified.
Instance read_instance(const std::filesystem::path &dir);

/// File-system friendly form of a solver label.
std::string slugify(std::string_view label);

} // namespace lpeirl1
