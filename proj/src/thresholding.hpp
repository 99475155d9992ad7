// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace lpeirl1 {

/// Global minimizer of 0.5 (x - z)^2 + mu |x|^(1/2).
/// Zero for |z| <= 1.5 mu^(2/3); ties at the jump map to zero.
double half_threshold(double z, double mu);

/// Global minimizer of 0.5 (x - z)^2 + mu |x|^(2/3).
/// Zero for |z| <= 2 (2 mu / 3)^(3/4); ties at the jump map to zero.
double two_thirds_threshold(double z, double mu);

/// Jump threshold of the scalar lp proximal map for p in {1/2, 2/3}.
double lp_jump_threshold(double mu, double p);

/// True when p is one of the exponents with a closed-form proximal map.
bool lp_prox_supported(double p);

/// Dispatches on p; throws a configuration error for unsupported p.
double lp_prox(double z, double mu, double p);

} // namespace lpeirl1
