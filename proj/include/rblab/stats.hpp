/**
 * This code is part of rblab.
 *
 * (C) Copyright 2026 rblab developers.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef RBLAB_STATS_HPP_
#define RBLAB_STATS_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rblab/errors.hpp"

namespace rblab {

// ---------------------------------------------------------------------------
// Deterministic stream derivation
// ---------------------------------------------------------------------------

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent substream for a record, derived from (seed, a, b). Records
/// can then be evaluated in any order, or concurrently, with identical
/// results.
inline std::mt19937_64 derive_rng(uint64_t seed, uint64_t a, uint64_t b = 0) {
  uint64_t s = splitmix64(seed ^ splitmix64(a ^ splitmix64(b)));
  return std::mt19937_64(s);
}

/// Uniform double in [0, 1) with 53 random bits; avoids distribution
/// implementation differences between standard libraries.
inline double uniform01(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection.
inline uint64_t uniform_below(std::mt19937_64 &rng, uint64_t n) {
  if (n == 0) throw contract_error("uniform_below: empty range");
  uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

inline int binomial_draw(std::mt19937_64 &rng, int trials, double p) {
  int successes = 0;
  for (int t = 0; t < trials; ++t)
    if (uniform01(rng) < p) ++successes;
  return successes;
}

// ---------------------------------------------------------------------------
// Chi-square
// ---------------------------------------------------------------------------

namespace detail {

/// Regularized lower incomplete gamma P(a, x), series/continued-fraction
/// split at x = a + 1.
inline double gamma_p(double a, double x) {
  if (x < 0 || a <= 0) throw domain_error("gamma_p: invalid arguments");
  if (x == 0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  // Lentz continued fraction for Q(a, x)
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, hh = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    hh *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  double q = std::exp(-x + a * std::log(x) - lg) * hh;
  return 1.0 - q;
}

}  // namespace detail

inline double chi2_cdf(double x, double dof) {
  if (x <= 0) return 0.0;
  return detail::gamma_p(dof / 2.0, x / 2.0);
}

/// Upper quantile by bisection: smallest x with CDF(x) >= prob.
inline double chi2_quantile(double prob, double dof) {
  if (prob <= 0 || prob >= 1) throw domain_error("chi2_quantile: prob in (0,1)");
  double lo = 0.0, hi = dof + 20.0 * std::sqrt(2.0 * dof) + 100.0;
  while (chi2_cdf(hi, dof) < prob) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (chi2_cdf(mid, dof) < prob)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct Chi2Result {
  double statistic = 0;
  double dof = 0;
  double p_value = 1;
};

/// Pearson chi-square against the uniform distribution over the classes.
inline Chi2Result chi2_uniform_test(const std::vector<uint64_t> &counts) {
  uint64_t total = 0;
  for (uint64_t c : counts) total += c;
  const double expected =
      static_cast<double>(total) / static_cast<double>(counts.size());
  Chi2Result r;
  for (uint64_t c : counts) {
    double d = static_cast<double>(c) - expected;
    r.statistic += d * d / expected;
  }
  r.dof = static_cast<double>(counts.size()) - 1.0;
  r.p_value = 1.0 - chi2_cdf(r.statistic, r.dof);
  return r;
}

inline double mean(const std::vector<double> &v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double variance(const std::vector<double> &v) {
  if (v.size() < 2) return 0.0;
  double m = mean(v), s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace rblab

#endif  // RBLAB_STATS_HPP_
