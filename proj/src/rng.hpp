// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lpeirl1 {

/// Portable random stream: mt19937_64 (output fixed by the C++ standard)
/// with distribution transforms written out here, because the standard
/// library's distributions are implementation-defined.
class Rng {
public:
  static constexpr const char *kName = "mt19937_64/box-muller/lemire";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0,1) with 53 random bits.
  double uniform();
  /// Uniform on (0,1].
  double uniform_open_low() { return 1.0 - uniform(); }
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// k distinct indices from [0, n), in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k);

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace lpeirl1
