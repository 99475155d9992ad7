// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "error.hpp"

namespace lpeirl1 {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

template <class ByteOf>
std::uint64_t fnv1a(const SignPattern &signs, ByteOf byte_of) {
  std::uint64_t h = kFnvOffset;
  for (std::int8_t s : signs) {
    h ^= static_cast<std::uint8_t>(byte_of(s));
    h *= kFnvPrime;
  }
  return h;
}

/// Start of the final constant run of key(record), or none if the run is a
/// single record at the end of a longer trace.
template <class Key>
std::optional<long> stable_from(const std::vector<IterationRecord> &records,
                                Key key) {
  if (records.empty())
    return std::nullopt;
  std::size_t start = records.size() - 1;
  while (start > 0 && key(records[start - 1]) == key(records[start]))
    --start;
  if (start == records.size() - 1 && records.size() > 1)
    return std::nullopt;
  return records[start].k;
}

} // namespace

std::uint64_t sign_digest(const SignPattern &signs) {
  return fnv1a(signs, [](std::int8_t s) { return static_cast<std::uint8_t>(s); });
}

std::uint64_t support_digest(const SignPattern &signs) {
  return fnv1a(signs, [](std::int8_t s) { return s != 0 ? 1u : 0u; });
}

std::vector<PsiViolation> check_psi_decrease(const Trace &trace, double beta,
                                             double alpha_bar) {
  const auto &rec = trace.records;
  require(rec.size() >= 2, ErrorKind::Usage,
          "psi decrease check needs at least two trace records");
  require(beta > 0.0, ErrorKind::Usage, "beta must be positive");
  require(alpha_bar >= 0.0 && alpha_bar <= 1.0, ErrorKind::Usage,
          "alpha_bar must lie in [0,1]");
  const double factor = 0.5 * beta * (1.0 - alpha_bar * alpha_bar);
  std::vector<PsiViolation> out;
  for (std::size_t i = 0; i + 1 < rec.size(); ++i) {
    const double decrease = rec[i].psi - rec[i + 1].psi;
    const double required = factor * rec[i].step_norm * rec[i].step_norm;
    const double slack = 1e-8 * (1.0 + std::abs(rec[i].psi));
    if (decrease < required - slack)
      out.push_back(PsiViolation{rec[i].k, decrease, required});
  }
  return out;
}

StabilizationReport detect_stabilization(const Trace &trace) {
  StabilizationReport report;
  const auto &rec = trace.records;
  report.support_stable_from = stable_from(rec, [](const IterationRecord &r) {
    return std::pair{r.support_hash, r.support_size};
  });
  report.sign_stable_from = stable_from(rec, [](const IterationRecord &r) {
    return std::pair{r.sign_hash, r.support_size};
  });
  if (report.sign_stable_from) {
    double smallest = 0.0;
    bool any = false;
    for (const auto &r : rec) {
      if (r.k < *report.sign_stable_from || r.support_size == 0)
        continue;
      smallest = any ? std::min(smallest, r.min_abs_nonzero) : r.min_abs_nonzero;
      any = true;
    }
    report.min_nonzero_magnitude_after_stable = smallest;
  }
  return report;
}

double tail_sum(const Trace &trace, long from_k) {
  double total = 0.0;
  for (const auto &r : trace.records)
    if (r.k >= from_k)
      total += r.step_norm;
  return total;
}

RateFit fit_log_linear(const std::vector<long> &ks,
                       const std::vector<double> &distances,
                       double tail_fraction, long min_k) {
  require(ks.size() == distances.size(), ErrorKind::Usage,
          "rate fit: index and distance sequences differ in length");
  require(tail_fraction > 0.0 && tail_fraction <= 1.0, ErrorKind::Usage,
          "rate fit: tail_fraction must lie in (0,1]");
  RateFit fit;
  fit.tail_fraction = tail_fraction;
  if (ks.empty())
    return fit;

  const auto [lo, hi] = std::minmax_element(ks.begin(), ks.end());
  const double tail_start =
      static_cast<double>(*hi) - tail_fraction * static_cast<double>(*hi - *lo);

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (static_cast<double>(ks[i]) < tail_start || ks[i] < min_k)
      continue;
    if (!(distances[i] >= 1e-14) || !std::isfinite(distances[i]))
      continue;
    xs.push_back(static_cast<double>(ks[i]));
    ys.push_back(std::log(distances[i]));
  }
  fit.points = static_cast<long>(xs.size());
  if (xs.size() < 5)
    return fit;

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0)
    return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += e * e;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  const double gamma = std::exp(fit.slope);
  if (gamma > 0.0 && gamma < 1.0)
    fit.gamma_hat = gamma;
  return fit;
}

RateFit fit_rate(const Trace &trace, const Vector &x_ref, double tail_fraction) {
  std::vector<long> ks;
  std::vector<double> d;
  for (const auto &s : trace.snapshots) {
    require(s.x.size() == x_ref.size(), ErrorKind::Usage,
            "rate fit: reference dimension does not match the trace");
    ks.push_back(s.k);
    d.push_back((s.x - x_ref).norm());
  }
  const auto stab = detect_stabilization(trace);
  return fit_log_linear(ks, d, tail_fraction, stab.sign_stable_from.value_or(0));
}

RateFit fit_step_rate(const Trace &trace, double tail_fraction) {
  std::vector<long> ks;
  std::vector<double> d;
  for (const auto &r : trace.records) {
    ks.push_back(r.k);
    d.push_back(r.step_norm);
  }
  const auto stab = detect_stabilization(trace);
  return fit_log_linear(ks, d, tail_fraction, stab.sign_stable_from.value_or(0));
}

} // namespace lpeirl1
