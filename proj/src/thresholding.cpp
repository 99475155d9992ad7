// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#include "thresholding.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "error.hpp"

namespace lpeirl1 {

namespace {

constexpr double kExponentTol = 1e-12;

bool is_half(double p) { return std::abs(p - 0.5) <= kExponentTol; }
bool is_two_thirds(double p) { return std::abs(p - 2.0 / 3.0) <= kExponentTol; }

} // namespace

double lp_jump_threshold(double mu, double p) {
  if (is_half(p))
    return 1.5 * std::cbrt(mu * mu);
  if (is_two_thirds(p))
    return 2.0 * std::pow(2.0 * mu / 3.0, 0.75);
  fail(ErrorKind::Config, "closed-form lp thresholding supports p = 1/2 or "
                          "p = 2/3 only, got p = " +
                              std::to_string(p));
}

// Half thresholding for (x - z)^2 + lam |x|^(1/2) with lam = 2 mu:
//   x = (2/3) z (1 + cos(2 pi / 3 - 2 phi / 3)),
//   phi = arccos((lam / 8) (|z| / 3)^(-3/2)).
double half_threshold(double z, double mu) {
  if (mu == 0.0)
    return z;
  const double az = std::abs(z);
  if (az <= lp_jump_threshold(mu, 0.5))
    return 0.0;
  const double lam = 2.0 * mu;
  const double arg = std::min(1.0, lam / 8.0 * std::pow(az / 3.0, -1.5));
  const double phi = std::acos(arg);
  return 2.0 / 3.0 * z *
         (1.0 + std::cos(2.0 * std::numbers::pi / 3.0 - 2.0 * phi / 3.0));
}

// Two-thirds thresholding for (x - z)^2 + lam |x|^(2/3) with lam = 2 mu:
//   phi = arccosh(27 z^2 / 16 * lam^(-3/2)),
//   a = (2 / sqrt 3) lam^(1/4) sqrt(cosh(phi / 3)),
//   x = sign(z) ((a + sqrt(2 |z| / a - a^2)) / 2)^3.
double two_thirds_threshold(double z, double mu) {
  if (mu == 0.0)
    return z;
  const double az = std::abs(z);
  if (az <= lp_jump_threshold(mu, 2.0 / 3.0))
    return 0.0;
  const double lam = 2.0 * mu;
  const double arg = std::max(1.0, 27.0 * z * z / 16.0 * std::pow(lam, -1.5));
  const double phi = std::acosh(arg);
  const double a =
      2.0 / std::sqrt(3.0) * std::pow(lam, 0.25) * std::sqrt(std::cosh(phi / 3.0));
  const double root = std::sqrt(std::max(0.0, 2.0 * az / a - a * a));
  const double m = 0.5 * (a + root);
  return std::copysign(m * m * m, z);
}

bool lp_prox_supported(double p) { return is_half(p) || is_two_thirds(p); }

double lp_prox(double z, double mu, double p) {
  if (is_half(p))
    return half_threshold(z, mu);
  if (is_two_thirds(p))
    return two_thirds_threshold(z, mu);
  fail(ErrorKind::Config, "closed-form lp thresholding supports p = 1/2 or "
                          "p = 2/3 only, got p = " +
                              std::to_string(p));
}

} // namespace lpeirl1
