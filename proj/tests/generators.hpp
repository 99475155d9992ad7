// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

// Small seeded value generators for property tests.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gen {

class Source {
public:
  explicit Source(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  double normal() {
    const double u1 = 1.0 - unit();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  bool coin(double p_true = 0.5) { return unit() < p_true; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(unit() * n); }

  std::vector<double> normals(std::size_t n) {
    std::vector<double> v(n);
    for (auto &x : v)
      x = normal();
    return v;
  }

  /// Mostly Gaussian entries with a share of exact zeros.
  std::vector<double> sparse_normals(std::size_t n, double zero_share) {
    std::vector<double> v(n);
    for (auto &x : v)
      x = coin(zero_share) ? 0.0 : normal();
    return v;
  }

private:
  std::mt19937_64 engine_;
};

} // namespace gen
