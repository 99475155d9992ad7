// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <doctest.h>

#include "error.hpp"
#include "helpers.hpp"
#include "io.hpp"
#include "report.hpp"
#include "run_config.hpp"

using namespace lpeirl1;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string &name)
      : path(fs::temp_directory_path() / ("lpeirl1_unit_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string error_of(auto &&fn, ErrorKind *kind = nullptr) {
  try {
    fn();
  } catch (const Error &e) {
    if (kind)
      *kind = e.kind();
    return e.what();
  }
  return "";
}

Trace sample_trace() {
  const Instance inst = generate_instance(16, 32, 3, 1e-4, 5);
  const ProblemInstance prob(std::make_shared<LeastSquaresProblem>(inst.A, inst.y),
                             RegParams(0.5, 0.05));
  SolveOptions opts;
  opts.x_true = inst.x_true;
  SolverConfig c;
  c.stationarity_stride = 7;
  return solve_eirl1(prob, initial_point(32, 5), c, opts).trace;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("shortest round-trip formatting") {
  gen::Source src(61);
  for (int t = 0; t < 5000; ++t) {
    const double v = src.normal() * std::pow(10.0, src.uniform(-300, 300));
    REQUIRE(parse_double(format_double(v), "v") == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-4) == "1e-04");
  CHECK(format_double(5.0) == "5");
}

TEST_CASE("strict number parsing") {
  CHECK(parse_double("+2.5", "x") == 2.5);
  CHECK(parse_double("-1e-3", "x") == -1e-3);
  ErrorKind k{};
  CHECK(error_of([] { parse_double("1.5x", "lambda"); }, &k).find("lambda") == 0);
  CHECK(k == ErrorKind::InvalidInput);
  CHECK_THROWS_AS(parse_double("", "x"), Error);
  CHECK_THROWS_AS(parse_double(" 1", "x"), Error);
}

TEST_CASE("matrix files round-trip bit for bit") {
  TempDir dir("matrix");
  gen::Source src(62);
  Matrix M = testing::random_matrix(src, 5, 3);
  M(0, 0) = -0.0;
  M(1, 1) = std::numeric_limits<double>::denorm_min();
  write_matrix(dir.path / "m.bin", M);
  const Matrix back = read_matrix(dir.path / "m.bin");
  REQUIRE(back.rows() == 5);
  REQUIRE(back.cols() == 3);
  CHECK(std::memcmp(back.data(), M.data(), sizeof(double) * 15) == 0);
  CHECK(fs::file_size(dir.path / "m.bin") == 24 + 15 * 8);

  const Vector v = testing::random_vector(src, 7);
  write_vector(dir.path / "v.bin", v);
  CHECK(read_vector(dir.path / "v.bin") == v);
  CHECK_THROWS_AS(read_vector(dir.path / "m.bin"), Error);
}

TEST_CASE("matrix file layout is little-endian row-major") {
  TempDir dir("layout");
  Matrix M(1, 2);
  M << 1.0, 2.0;
  write_matrix(dir.path / "m.bin", M);
  const std::string bytes = read_text_file(dir.path / "m.bin");
  CHECK(bytes.substr(0, 8) == "LPEMAT01");
  CHECK(static_cast<unsigned char>(bytes[8]) == 1);
  CHECK(static_cast<unsigned char>(bytes[16]) == 2);
  // 1.0 = 0x3ff0000000000000, little-endian.
  CHECK(static_cast<unsigned char>(bytes[31]) == 0x3f);
  CHECK(static_cast<unsigned char>(bytes[30]) == 0xf0);
}

TEST_CASE("corrupt matrix files are rejected") {
  TempDir dir("corrupt");
  write_matrix(dir.path / "m.bin", Matrix::Ones(3, 3));
  std::string bytes = read_text_file(dir.path / "m.bin");
  write_text_file(dir.path / "short.bin", bytes.substr(0, bytes.size() - 4));
  CHECK(error_of([&] { read_matrix(dir.path / "short.bin"); }).find("short.bin") != std::string::npos);
  bytes[0] = 'X';
  write_text_file(dir.path / "magic.bin", bytes);
  CHECK_THROWS_AS(read_matrix(dir.path / "magic.bin"), Error);
  ErrorKind k{};
  const auto msg = error_of([&] { read_matrix(dir.path / "missing.bin"); }, &k);
  CHECK(k == ErrorKind::Io);
  CHECK(msg.find("missing.bin") != std::string::npos);
}

TEST_CASE("fnv checksum of known bytes") {
  TempDir dir("fnv");
  write_text_file(dir.path / "a.txt", "a");
  CHECK(file_checksum(dir.path / "a.txt") == "af63dc4c8601ec8c");
  write_text_file(dir.path / "e.txt", "");
  CHECK(file_checksum(dir.path / "e.txt") == "cbf29ce484222325");
}

TEST_CASE("trace CSV round-trips exactly") {
  const Trace t = sample_trace();
  const std::string csv = trace_to_csv(t);
  CHECK(csv.rfind(std::string(kTraceHeader) + "\n", 0) == 0);
  const Trace back = parse_trace_csv(csv);
  REQUIRE(back.records.size() == t.records.size());
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    const auto &a = t.records[i];
    const auto &b = back.records[i];
    REQUIRE(a.k == b.k);
    REQUIRE(a.psi == b.psi);
    REQUIRE(a.F_eps == b.F_eps);
    REQUIRE(a.step_norm == b.step_norm);
    REQUIRE(a.rel_step == b.rel_step);
    REQUIRE(a.eps_norm1 == b.eps_norm1);
    REQUIRE(a.mse == b.mse);
    REQUIRE(a.stationarity == b.stationarity);
    REQUIRE(a.sign_hash == b.sign_hash);
    REQUIRE(a.support_hash == b.support_hash);
    REQUIRE(a.support_size == b.support_size);
    REQUIRE(a.min_abs_nonzero == b.min_abs_nonzero);
  }
  CHECK(trace_to_csv(back) == csv);
  // Stationarity cells are empty except on the stride and the final row.
  CHECK(t.records[1].stationarity == std::nullopt);
  CHECK(t.records[7].stationarity.has_value());
}

TEST_CASE("trace CSV errors carry the line number") {
  const std::string header = std::string(kTraceHeader) + "\n";
  CHECK(error_of([&] { parse_trace_csv(header + "0,1,2,0,0,1,1,,,0,0,0\n1,1,x,0,0,1,1,,,0,0,0\n"); })
            .find("line 3") != std::string::npos);
  CHECK(error_of([&] { parse_trace_csv(header + "0,1,2\n"); }).find("line 2") != std::string::npos);
  CHECK(error_of([&] { parse_trace_csv("k,psi\n0,1\n"); }).find("step_norm") != std::string::npos);
  CHECK(error_of([&] { parse_trace_csv("k,psi,step_norm\n1,1,0\n1,1,0\n"); }).find("increasing") !=
        std::string::npos);
  CHECK(error_of([&] { parse_trace_csv(""); }).find("line 1") != std::string::npos);
  const Trace minimal = parse_trace_csv("k,psi,step_norm\r\n0,2,0\r\n1,1.5,0.5\r\n");
  CHECK(minimal.records.size() == 2);
  CHECK(minimal.records[1].psi == 1.5);
}

} // TEST_SUITE

TEST_SUITE("config") {

TEST_CASE("defaults follow the reference experiment") {
  const RunConfig rc = ConfigDocument().resolve();
  CHECK(rc.spec.reg.lambda == 0.05);
  CHECK(rc.spec.reg.p == 0.5);
  CHECK(rc.spec.sigma2 == 1e-4);
  CHECK(rc.solver_config.mu == 0.9);
  CHECK(rc.solver_config.beta == 1.0);
  CHECK(rc.solver_config.eps0 == 1.0);
  CHECK(rc.solver_config.alpha_schedule.value == 0.9);
  CHECK(rc.solver_config.opttol == 1e-6);
  CHECK(rc.spec.m == 256);
  CHECK(rc.spec.n == 512);
  CHECK(rc.spec.K == 25);
  CHECK(rc.spec.trials == 20);
  CHECK(rc.solver == SolverKind::Eirl1);
  CHECK(rc.spec.solver_set.size() == 1);
}

TEST_CASE("parse errors report line and column") {
  const auto msg = error_of([] { ConfigDocument::parse("{\n  \"m\": 10,\n  \"n\" 20\n}"); });
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("column") != std::string::npos);
}

TEST_CASE("field errors name the field") {
  ErrorKind k{};
  CHECK(error_of([] { ConfigDocument::parse(R"({"lambda": -1})"); }, &k).find("lambda") != std::string::npos);
  CHECK(k == ErrorKind::Config);
  CHECK(error_of([] { ConfigDocument::parse(R"({"mu": "fast"})"); }).find("'mu'") != std::string::npos);
  CHECK(error_of([] { ConfigDocument::parse(R"({"alpha": 1.2})"); }).find("'alpha'") != std::string::npos);
  CHECK(error_of([] { ConfigDocument::parse(R"({"trace": "loud"})"); }).find("'trace'") != std::string::npos);
  CHECK(error_of([] { ConfigDocument::parse(R"({"m": -3})"); }).find("'m'") != std::string::npos);
  CHECK(error_of([] { ConfigDocument::parse(R"({"bogus": 1})"); }).find("bogus") != std::string::npos);
  CHECK(error_of([] { ConfigDocument::parse(R"({"solvers": [{"solver": "irl1", "p": 0.5}]})"); })
            .find("solvers[0]") != std::string::npos);
  const auto spec = error_of([] { ConfigDocument::parse(R"({"K": 600})"); }, &k);
  CHECK(k == ErrorKind::Specification);
  CHECK(spec.find("K") != std::string::npos);
}

TEST_CASE("solver-specific alpha defaults") {
  const auto rc = ConfigDocument::parse(
                      R"({"solvers": ["eirl1", "irl1", "irl2", {"solver": "irl2", "alpha": 0.5}, "ijt"]})")
                      .resolve();
  const auto &s = rc.spec.solver_set;
  REQUIRE(s.size() == 5);
  CHECK(s[0].config.alpha_schedule.value == 0.9);
  CHECK(s[1].config.alpha_schedule.value == 0.0);
  CHECK(s[2].config.alpha_schedule.value == 0.0);
  CHECK(s[3].config.alpha_schedule.value == 0.5);
  CHECK(s[4].config.alpha_schedule.value == 0.0);
}

TEST_CASE("flags override the file") {
  auto doc = ConfigDocument::parse(
      R"({"lambda": 0.1, "max_iter": 50, "solvers": [{"solver": "eirl1", "alpha": 0.3}]})");
  doc.set("lambda", "0.2");
  doc.set("alpha", "nesterov");
  doc.set("max-iter", "75");
  const auto rc = doc.resolve();
  CHECK(rc.spec.reg.lambda == 0.2);
  CHECK(rc.spec.solver_set[0].config.alpha_schedule.kind == AlphaSchedule::Kind::Nesterov);
  CHECK(rc.solver_config.max_iter == 75);

  doc.set("solver", "ijt");
  const auto rc2 = doc.resolve();
  CHECK(rc2.solver == SolverKind::Ijt);
  REQUIRE(rc2.spec.solver_set.size() == 1);
  CHECK(rc2.spec.solver_set[0].kind == SolverKind::Ijt);

  ErrorKind k{};
  error_of([&] { doc.set("lambda", "abc"); }, &k);
  CHECK(k == ErrorKind::Config);
  error_of([&] { doc.set("colour", "1"); }, &k);
  CHECK(k == ErrorKind::Usage);
  error_of([&] { doc.set("seed", "1.5"); }, &k);
  CHECK(k == ErrorKind::Config);
}

TEST_CASE("alpha sweep lists") {
  ConfigDocument doc;
  doc.set("alphas", "0,0.3,nesterov");
  const auto rc = doc.resolve();
  REQUIRE(rc.alphas.has_value());
  REQUIRE(rc.alphas->size() == 3);
  CHECK((*rc.alphas)[1].value == 0.3);
  CHECK((*rc.alphas)[2].kind == AlphaSchedule::Kind::Nesterov);
}

TEST_CASE("slugify") {
  CHECK(slugify("eirl1(alpha=0.9)") == "eirl1_alpha_0.9");
  CHECK(slugify("irl1") == "irl1");
  CHECK(slugify("a  b#2") == "a_b_2");
}

} // TEST_SUITE

TEST_SUITE("report") {

TEST_CASE("instance files round-trip and checksums are verified") {
  TempDir dir("instance");
  const Instance inst = generate_instance(8, 16, 2, 1e-4, 3);
  write_instance(inst, dir.path, true);
  for (const char *f : {"A.bin", "x_true.bin", "y.bin", "instance.json", "A.csv", "y.csv"})
    CHECK(fs::exists(dir.path / f));
  const Instance back = read_instance(dir.path);
  CHECK(back.A == inst.A);
  CHECK(back.y == inst.y);
  CHECK(back.x_true == inst.x_true);
  CHECK(back.seed == 3);
  CHECK(back.sparsity == 2);

  Vector y = inst.y;
  y[0] += 1.0;
  write_vector(dir.path / "y.bin", y);
  CHECK(error_of([&] { read_instance(dir.path); }).find("checksum") != std::string::npos);
  CHECK_THROWS_AS(read_instance(dir.path / "nope"), Error);
}

TEST_CASE("diagnostics report for a fixed-point trace") {
  Trace t;
  for (long k = 0; k < 5; ++k) {
    IterationRecord r;
    r.k = k;
    r.psi = 1.0;
    t.records.push_back(r);
  }
  const auto j = diagnostics_report(t, DiagnosticsOptions{});
  CHECK(j["psi_decrease"]["passed"].get<bool>());
  CHECK(j["rate_fit"]["gamma_hat"].is_null());
  CHECK(j["stabilization"]["sign_stable_from"].get<long>() == 0);
  CHECK(j["tail_sums"]["total"].get<double>() == 0.0);
}

TEST_CASE("diagnostics report survives the CSV round trip") {
  const Trace t = sample_trace();
  DiagnosticsOptions o;
  o.alpha_bar = 0.9;
  CHECK(diagnostics_report(t, o) == diagnostics_report(parse_trace_csv(trace_to_csv(t)), o));
}

TEST_CASE("effective alpha bar") {
  SolverConfig c;
  CHECK(effective_alpha_bar(SolverKind::Eirl1, c) == 0.9);
  CHECK(effective_alpha_bar(SolverKind::Irl1, c) == 0.0);
  c.alpha_schedule = AlphaSchedule::nesterov();
  CHECK(effective_alpha_bar(SolverKind::Eirl1, c) == 1.0);
}

TEST_CASE("bench writes one curve per solver") {
  TempDir dir("bench");
  auto doc = ConfigDocument::parse(
      R"({"m": 16, "n": 32, "K": 2, "trials": 2, "solvers": ["eirl1", "irl1", "irl2", "ijt"]})");
  const auto out = write_bench(doc.resolve(), dir.path, 1);
  CHECK(out.total_trials == 8);
  CHECK(out.failed_trials == 0);
  for (const char *f : {"trials.csv", "aggregate.json", "mse_curve_eirl1_alpha_0.9.csv",
                        "mse_curve_irl1.csv", "mse_curve_irl2_alpha_0.csv", "mse_curve_ijt.csv"})
    CHECK(fs::exists(dir.path / f));
  const auto agg = nlohmann::json::parse(read_text_file(dir.path / "aggregate.json"));
  CHECK(agg["generator"] == "mt19937_64/box-muller/lemire");
  CHECK(agg["solvers"].size() == 4);
  CHECK(agg["solvers"][0]["support_quartiles"].contains("q3"));
}

} // TEST_SUITE
