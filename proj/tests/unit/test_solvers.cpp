// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <string>

#include <doctest.h>

#include "../oracles.hpp"
#include "bench.hpp"
#include "core_math.hpp"
#include "error.hpp"
#include "helpers.hpp"
#include "solvers.hpp"
#include "thresholding.hpp"

using namespace lpeirl1;
using testing::vec;

namespace {

// Gradient overflows to -inf once divided by beta < 1.
class OverflowTerm final : public SmoothTerm {
public:
  double value(const Vector &) const override { return 0.0; }
  Vector gradient(const Vector &x) const override {
    return Vector::Constant(x.size(), -1e308);
  }
  double lipschitz_constant() const override { return 0.0; }
  Index dimension() const override { return 3; }
};

ProblemInstance small_replica(std::uint64_t seed, double p = 0.5) {
  const Instance inst = generate_instance(64, 128, 6, 1e-4, seed);
  return ProblemInstance(std::make_shared<LeastSquaresProblem>(inst.A, inst.y),
                         RegParams(p, 0.05));
}

SolverConfig with_alpha(double a) {
  SolverConfig c;
  c.alpha_schedule = AlphaSchedule::constant(a);
  return c;
}

} // namespace

TEST_SUITE("solvers") {

TEST_CASE("alpha schedules") {
  const auto nest = AlphaSchedule::nesterov();
  CHECK(alpha_at(nest, 0) == 0.0);
  CHECK(alpha_at(nest, 1) == 0.0);
  CHECK(alpha_at(nest, 10) == 0.75);
  for (long k = 0; k < 10000; k += 37)
    REQUIRE((alpha_at(nest, k) >= 0.0 && alpha_at(nest, k) < 1.0));
  CHECK(nest.supremum() == 1.0);
  CHECK(alpha_at(AlphaSchedule::constant(0.3), 99) == 0.3);
  CHECK_THROWS_AS(AlphaSchedule::constant(1.0), Error);
  CHECK_THROWS_AS(AlphaSchedule::constant(-0.01), Error);
  CHECK(AlphaSchedule::constant(0.9).describe() == "0.9");
  CHECK(nest.describe() == "nesterov");
}

TEST_CASE("solver names round-trip") {
  for (auto k : {SolverKind::Eirl1, SolverKind::Irl1, SolverKind::Irl2, SolverKind::Ijt})
    CHECK(parse_solver_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_solver_kind("fista"), Error);
  CHECK(parse_trace_level("summary") == TraceLevel::Summary);
  CHECK_THROWS_AS(parse_trace_level("verbose"), Error);
}

TEST_CASE("solver config validation names the field") {
  auto message = [](SolverConfig c) {
    try {
      c.validate();
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::Config);
      return std::string(e.what());
    }
    return std::string();
  };
  SolverConfig c;
  c.mu = 1.0;
  CHECK(message(c).find("mu") == 0);
  c = SolverConfig{};
  c.beta = 0.0;
  CHECK(message(c).find("beta") == 0);
  c = SolverConfig{};
  c.opttol = 0.0;
  CHECK(message(c).find("opttol") == 0);
  c = SolverConfig{};
  c.eps0 = -1.0;
  CHECK(message(c).find("eps0") == 0);
  CHECK(message(SolverConfig{}).empty());
}

TEST_CASE("thresholding worked examples") {
  // Global minimizers of (1/2)(x - 2)^2 + 0.1 |x|^p.
  CHECK(oracle::lp_prox(2.0, 0.1, 0.5) == doctest::Approx(1.9643250538359176).epsilon(1e-14));
  CHECK(half_threshold(2.0, 0.1) == doctest::Approx(1.9643250538359176).epsilon(1e-13));
  CHECK(oracle::lp_prox(2.0, 0.1, 2.0 / 3.0) == doctest::Approx(1.9466072079456835).epsilon(1e-14));
  CHECK(two_thirds_threshold(2.0, 0.1) == doctest::Approx(1.9466072079456835).epsilon(1e-13));
  CHECK(half_threshold(-2.0, 0.1) == -half_threshold(2.0, 0.1));
  CHECK(half_threshold(0.3, 0.1) == 0.0);
  CHECK(half_threshold(0.7, 0.0) == 0.7);
}

TEST_CASE("thresholding at the jump") {
  for (double p : {0.5, 2.0 / 3.0}) {
    for (double mu : {1e-4, 0.05, 0.3, 2.0}) {
      const double t = lp_jump_threshold(mu, p);
      CHECK(lp_prox(t, mu, p) == 0.0);
      const double above = lp_prox(std::nextafter(t, 10.0 * t) * (1.0 + 1e-9), mu, p);
      // The nonzero branch starts with a jump, not continuously from 0.
      CHECK(above > 0.5 * t);
      // At the threshold both candidates attain the same objective.
      const double x = oracle::lp_prox(t * (1.0 + 1e-9), mu, p);
      CHECK(above == doctest::Approx(x).epsilon(1e-7));
    }
  }
}

TEST_CASE("property: closed-form thresholding matches the brute-force oracle") {
  gen::Source src(31);
  for (double p : {0.5, 2.0 / 3.0}) {
    double worst = 0.0;
    bool grid_ok = true;
    for (int t = 0; t < 2000; ++t) {
      const double mu = src.log_uniform(1e-3, 2.0);
      const double z = src.normal() * 3.0 * std::sqrt(mu + 0.1);
      bool ok = true;
      const double expected = oracle::lp_prox(z, mu, p, &ok);
      grid_ok = grid_ok && ok;
      worst = std::max(worst, std::abs(lp_prox(z, mu, p) - expected));
    }
    CHECK(grid_ok);
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("unsupported exponent names the two closed forms") {
  try {
    lp_prox(1.0, 0.1, 0.3);
    FAIL("expected a configuration error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::Config);
    const std::string msg = e.what();
    CHECK(msg.find("1/2") != std::string::npos);
    CHECK(msg.find("2/3") != std::string::npos);
  }
  const auto prob = testing::shifted_identity(Vector::Ones(2), 0.3, 0.1);
  CHECK_THROWS_AS(solve_ijt(prob, Vector::Zero(2), SolverConfig{}), Error);
}

TEST_CASE("eirl1 step: one-dimensional worked example") {
  // f = (1/2)(x - 1)^2, p = 1/2, lambda = 0.01, beta = 1, eps0 = 1, alpha = 0.
  // w = 0.5 (0 + 1)^(-1/2) = 0.5, z = 1, threshold 0.01 * 0.5 = 0.005.
  const auto prob = testing::shifted_identity(vec({1.0}), 0.5, 0.01);
  SolverConfig c = with_alpha(0.0);
  const auto s0 = IterateState::initial(vec({0.0}), 1.0);
  const auto s1 = eirl1_step(s0, prob, c, 0.0);
  const double expected = oracle::weighted_l1_subproblem(-1.0, 0.0, 1.0, 0.01 * 0.5);
  CHECK(expected == doctest::Approx(0.995).epsilon(1e-14));
  CHECK(s1.x[0] == doctest::Approx(expected).epsilon(1e-15));
  CHECK(s1.x_prev[0] == 0.0);
  CHECK(s1.k == 1);
  CHECK(s1.eps[0] == 0.9);
}

TEST_CASE("eirl1 step: huge lambda zeroes the iterate") {
  gen::Source src(32);
  const Vector a = testing::random_vector(src, 5);
  const auto prob = testing::shifted_identity(a, 0.5, 1e6);
  const auto s = eirl1_step(IterateState::initial(testing::random_vector(src, 5), 1.0), prob,
                            SolverConfig{}, 0.0);
  CHECK(s.x.isZero(0.0));
}

TEST_CASE("eirl1 step: vanishing lambda keeps a fixed point") {
  const Vector x = vec({0.4, -1.3, 2.0});
  const auto prob = testing::zero_problem(3, 0.5, 1e-300);
  const auto s = eirl1_step(IterateState::initial(x, 1.0), prob, SolverConfig{}, 0.0);
  CHECK(s.x == x);
}

TEST_CASE("irl2 step worked examples") {
  // f = (1/2)(x - 1)^2, p = 1/2, lambda = 0.1, eps = 1, x = 0:
  // v = (1/4) 1^(-3/4) = 0.25, x_next = 1 / (1 + 0.05).
  const auto prob = testing::shifted_identity(vec({1.0}), 0.5, 0.1);
  const auto s = irl2_step(IterateState::initial(vec({0.0}), 1.0), prob, with_alpha(0.0), 0.0);
  const double v = 0.25;
  // Minimizer of (1/2)(x - z)^2 + lambda v x^2 by bisection on its derivative.
  const double expected = oracle::bisect([&](double x) { return (x - 1.0) + 2.0 * 0.1 * v * x; }, -5.0, 5.0);
  CHECK(expected == doctest::Approx(0.95238095238095238).epsilon(1e-14));
  CHECK(s.x[0] == doctest::Approx(expected).epsilon(1e-15));

  // Vanishing lambda leaves the plain gradient step.
  const auto free = testing::shifted_identity(vec({3.0}), 0.5, 1e-300);
  CHECK(irl2_step(IterateState::initial(vec({1.0}), 1.0), free, with_alpha(0.0), 0.0).x[0] == 3.0);

  // Capped reweighting drives the coordinate to (nearly) zero.
  const auto capped = testing::shifted_identity(vec({1.0}), 0.5, 1.0);
  auto tiny = IterateState::initial(vec({0.0}), 1.0);
  tiny.eps = EpsilonVector::uniform(1, kEpsFloor);
  CHECK(std::abs(irl2_step(tiny, capped, with_alpha(0.0), 0.0).x[0]) <= 1.0 / (1.0 + 2e15) * 1.0001);
}

TEST_CASE("ijt step worked examples") {
  const auto prob = testing::shifted_identity(vec({2.0, 0.2}), 0.5, 0.1);
  const auto s = ijt_step(IterateState::initial(vec({0.0, 0.0}), 1.0), prob, SolverConfig{});
  CHECK(s.x[0] == doctest::Approx(1.9643250538359176).epsilon(1e-13));
  CHECK(s.x[1] == 0.0); // below the jump
  CHECK(s.eps[0] == 1.0);
  const auto free = testing::shifted_identity(vec({2.0}), 0.5, 1e-300);
  CHECK(ijt_step(IterateState::initial(vec({0.5}), 1.0), free, SolverConfig{}).x[0] == 2.0);
}

TEST_CASE("trivial instance converges at k = 1") {
  const auto prob = testing::shifted_identity(Vector::Zero(4), 0.5, 0.05);
  for (auto kind : {SolverKind::Eirl1, SolverKind::Irl1, SolverKind::Irl2, SolverKind::Ijt}) {
    const auto r = solve(kind, prob, Vector::Zero(4), SolverConfig{});
    CHECK(r.converged);
    CHECK(r.iterations == 1);
    CHECK(r.x_final.isZero(0.0));
    CHECK(r.termination_reason == TerminationReason::OpttolMet);
    CHECK(r.trace.records.size() == 2);
  }
}

TEST_CASE("loose opttol stops after one iteration") {
  SolverConfig c;
  c.opttol = 10.0;
  const auto r = solve_eirl1(small_replica(3), initial_point(128, 3), c);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
}

TEST_CASE("max_iter terminates without convergence") {
  SolverConfig c;
  c.max_iter = 5;
  const auto r = solve_eirl1(small_replica(3), initial_point(128, 3), c);
  CHECK_FALSE(r.converged);
  CHECK(r.termination_reason == TerminationReason::MaxIter);
  CHECK(r.iterations == 5);
  CHECK(r.trace.records.size() == 6);
  CHECK(r.trace.records.back().stationarity.has_value());
}

TEST_CASE("small replica converges with a nonempty support") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto r = solve_eirl1(small_replica(seed), initial_point(128, seed), SolverConfig{});
    CHECK(r.converged);
    CHECK(r.iterations <= 5000);
    CHECK((r.x_final.array() != 0.0).count() >= 1);
  }
}

TEST_CASE("irl1 equals eirl1 with a zero schedule") {
  const auto prob = small_replica(4);
  const Vector x0 = initial_point(128, 4);
  const auto a = solve_irl1(prob, x0, SolverConfig{});
  const auto b = solve_eirl1(prob, x0, with_alpha(0.0));
  CHECK(a.iterations == b.iterations);
  CHECK(a.x_final == b.x_final);
  REQUIRE(a.trace.records.size() == b.trace.records.size());
  for (std::size_t i = 0; i < a.trace.records.size(); ++i) {
    REQUIRE(a.trace.records[i].psi == b.trace.records[i].psi);
    REQUIRE(a.trace.records[i].sign_hash == b.trace.records[i].sign_hash);
  }
}

TEST_CASE("property: iterates satisfy the subproblem condition and eps decays exactly") {
  const auto prob = small_replica(5);
  const SolverConfig c;
  auto s = IterateState::initial(initial_point(128, 5), c.eps0);
  for (long k = 0; k < 150; ++k) {
    const double alpha = alpha_at(c.alpha_schedule, k);
    const WeightVector w = compute_weights(s.x, s.eps, prob.reg);
    const Vector y = extrapolate(s.x, s.x_prev, alpha);
    const Vector g = prob.smooth->gradient(y);
    s = eirl1_step(s, prob, c, alpha);
    REQUIRE(prox_optimality_residual(g, y, w, c.beta, prob.reg.lambda, s.x) <= 1e-9);
    // Repeated multiplication; agrees with eps0 mu^k up to accumulated rounding.
    const double closed = std::max(c.eps0 * std::pow(c.mu, static_cast<double>(s.k)), kEpsFloor);
    REQUIRE(std::abs(s.eps[0] - closed) <= 1e-15 * static_cast<double>(s.k) * closed);
  }
}

TEST_CASE("property: psi is nonincreasing and steps vanish on converged runs") {
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    for (double alpha : {0.0, 0.5, 0.9}) {
      const auto r = solve_eirl1(small_replica(seed), initial_point(128, seed), with_alpha(alpha));
      REQUIRE(r.converged);
      const auto &rec = r.trace.records;
      for (std::size_t i = 1; i < rec.size(); ++i)
        REQUIRE(rec[i].psi <= rec[i - 1].psi + 1e-10 * (1.0 + std::abs(rec[i - 1].psi)));
      double early = 0.0;
      for (std::size_t i = 1; i <= 10 && i < rec.size(); ++i)
        early += rec[i].step_norm / 10.0;
      REQUIRE(rec.back().step_norm <= early);
    }
  }
}

TEST_CASE("nesterov schedule runs to convergence") {
  SolverConfig c;
  c.alpha_schedule = AlphaSchedule::nesterov();
  const auto r = solve_eirl1(small_replica(6), initial_point(128, 6), c);
  CHECK(r.converged);
}

TEST_CASE("all solvers converge on the small replica") {
  for (auto kind : {SolverKind::Irl1, SolverKind::Irl2, SolverKind::Ijt}) {
    SolverConfig c = with_alpha(0.0);
    const auto r = solve(kind, small_replica(7), initial_point(128, 7), c);
    CHECK(r.converged);
    CHECK(r.solver == kind);
  }
}

TEST_CASE("non-finite iterate ends the run as a numerical failure") {
  const ProblemInstance prob(std::make_shared<OverflowTerm>(), RegParams(0.5, 0.1));
  SolverConfig c;
  c.beta = 0.5;
  const auto r = solve_eirl1(prob, Vector::Zero(3), c);
  CHECK(r.termination_reason == TerminationReason::NumericalFailure);
  CHECK_FALSE(r.converged);
  CHECK(r.trace.records.size() == 1);
  CHECK(r.failure_message.find("non-finite") != std::string::npos);
}

TEST_CASE("trace levels") {
  const auto prob = small_replica(8);
  const Vector x0 = initial_point(128, 8);
  SolverConfig c;
  c.trace_level = TraceLevel::None;
  CHECK(solve_eirl1(prob, x0, c).trace.empty());
  c.trace_level = TraceLevel::Summary;
  const auto summary = solve_eirl1(prob, x0, c);
  CHECK(summary.trace.records.size() == static_cast<std::size_t>(summary.iterations + 1));
  CHECK(summary.trace.snapshots.empty());
  c.trace_level = TraceLevel::Full;
  c.snapshot_stride = 10;
  const auto full = solve_eirl1(prob, x0, c);
  CHECK(full.trace.snapshots.front().k == 0);
  CHECK(full.trace.snapshots.back().k == full.iterations);
  CHECK(full.trace.snapshots.back().x == full.x_final);
}

TEST_CASE("beta at the Lipschitz constant warns but runs") {
  const auto r = solve_eirl1(small_replica(9), initial_point(128, 9), SolverConfig{});
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("beta") != std::string::npos);
  SolverConfig c;
  c.beta = 1.5;
  CHECK(solve_eirl1(small_replica(9), initial_point(128, 9), c).warnings.empty());
}

TEST_CASE("solve input validation") {
  const auto prob = small_replica(1);
  CHECK_THROWS_AS(solve_eirl1(prob, Vector::Zero(3), SolverConfig{}), Error);
  Vector bad = Vector::Zero(128);
  bad[0] = NAN;
  CHECK_THROWS_AS(solve_eirl1(prob, bad, SolverConfig{}), Error);
}

} // TEST_SUITE
