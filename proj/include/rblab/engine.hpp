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

#ifndef RBLAB_ENGINE_HPP_
#define RBLAB_ENGINE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

#include "rblab/metrics.hpp"
#include "rblab/noise.hpp"
#include "rblab/stats.hpp"

namespace rblab {

// ---------------------------------------------------------------------------
// Experiment configuration and data
// ---------------------------------------------------------------------------

struct RbConfig {
  int n = 1;
  std::vector<int> m_list;
  int sequences_per_length = 100;  // K_m (constant across m)
  int shots = 0;                   // 0 = exact survival probabilities
  uint64_t seed = 0;
  NoiseModel noise;
  SpamSpec spam;

  RbConfig(NoiseModel noise_, SpamSpec spam_)
      : noise(std::move(noise_)), spam(std::move(spam_)) {
    n = noise.n();
  }

  void validate() const {
    if (m_list.empty()) throw contract_error("RbConfig: empty m_list");
    for (size_t i = 0; i < m_list.size(); ++i) {
      if (m_list[i] < 1) throw contract_error("RbConfig: m values must be >= 1");
      if (i && m_list[i] <= m_list[i - 1])
        throw contract_error("RbConfig: m_list must be strictly increasing");
    }
    if (sequences_per_length < 1) throw contract_error("RbConfig: K >= 1");
    if (shots < 0) throw contract_error("RbConfig: shots >= 0");
    if (noise.n() != n) throw shape_error("RbConfig: noise qubit count mismatch");
    spam.validate();
    if (spam.dim() != (1 << n))
      throw shape_error("RbConfig: SPAM dimension mismatch");
  }
};

struct RbRecord {
  int m = 0;
  int seq = 0;
  double survival = 0;  // exact probability, or successes/shots
  int successes = 0;    // meaningful only when shots > 0
  int shots = 0;
};

struct RbDataset {
  int n = 1;
  int shots = 0;
  uint64_t seed = 0;
  std::vector<int> m_list;
  int sequences_per_length = 0;
  std::vector<RbRecord> records;

  /// Mean survival per sequence length, in m_list order.
  std::vector<double> mean_survivals() const {
    std::vector<double> out(m_list.size(), 0.0);
    std::vector<int> counts(m_list.size(), 0);
    for (const auto &r : records) {
      auto it = std::find(m_list.begin(), m_list.end(), r.m);
      size_t k = static_cast<size_t>(it - m_list.begin());
      out[k] += r.survival;
      counts[k] += 1;
    }
    for (size_t k = 0; k < out.size(); ++k)
      if (counts[k]) out[k] /= counts[k];
    return out;
  }
};

// ---------------------------------------------------------------------------
// Sequences and simulation
// ---------------------------------------------------------------------------

/// m i.i.d. uniform elements followed by the inverse of their composition;
/// the noiseless composition of all m+1 returned elements is the identity.
inline std::vector<CliffordElement> generate_sequence(int m, int n,
                                                      std::mt19937_64 &rng) {
  if (m < 1) throw contract_error("generate_sequence: m >= 1");
  std::vector<CliffordElement> seq;
  seq.reserve(m + 1);
  CliffordElement acc = CliffordElement::identity(n);
  for (int j = 0; j < m; ++j) {
    seq.push_back(random_clifford(n, rng));
    acc = compose(seq.back(), acc);
  }
  seq.push_back(inverse(acc));
  return seq;
}

/// Composed dense superoperator of the noisy sequence; gate j of the list
/// occupies time step j+1 and the final slot carries the inverse element's
/// noise at step m+1.
inline Superoperator sequence_superoperator(const std::vector<CliffordElement> &seq,
                                            const NoiseModel &noise) {
  if (seq.empty()) throw contract_error("sequence_superoperator: empty sequence");
  const int d = noise.dim();
  Superoperator s = Superoperator::identity(d);
  for (size_t j = 0; j < seq.size(); ++j) {
    Superoperator gate = to_superoperator(seq[j]);
    Superoperator lam = noise.channel_for(seq[j], static_cast<int>(j) + 1);
    s = Superoperator(d, lam.mat * (gate.mat * s.mat));
  }
  return s;
}

inline double survival_probability(const Superoperator &s, const SpamSpec &spam) {
  CVec out = s.mat * vec(spam.rho.rho);
  return (vec(spam.effect).adjoint() * out)(0, 0).real();
}

/// Runs the protocol: K sequences per length, survival measured exactly
/// (shots = 0) or by binomial sampling. Each (m, sequence) record draws
/// from an independent stream derived from (seed, m, index), so records
/// are reproducible regardless of evaluation order; with threads > 1 the
/// records are computed concurrently and assembled by index.
inline RbDataset run_experiment(const RbConfig &cfg, int threads = 1) {
  cfg.validate();
  RbDataset data;
  data.n = cfg.n;
  data.shots = cfg.shots;
  data.seed = cfg.seed;
  data.m_list = cfg.m_list;
  data.sequences_per_length = cfg.sequences_per_length;
  const size_t total =
      cfg.m_list.size() * static_cast<size_t>(cfg.sequences_per_length);
  data.records.resize(total);

  auto compute = [&cfg](int m, int k) {
    auto rng = derive_rng(cfg.seed, static_cast<uint64_t>(m), k);
    auto seq = generate_sequence(m, cfg.n, rng);
    double p = survival_probability(sequence_superoperator(seq, cfg.noise),
                                    cfg.spam);
    p = std::clamp(p, 0.0, 1.0);
    RbRecord rec;
    rec.m = m;
    rec.seq = k;
    rec.shots = cfg.shots;
    if (cfg.shots > 0) {
      rec.successes = binomial_draw(rng, cfg.shots, p);
      rec.survival = static_cast<double>(rec.successes) / cfg.shots;
    } else {
      rec.survival = p;
    }
    return rec;
  };
  auto worker = [&](size_t begin, size_t stride) {
    for (size_t idx = begin; idx < total; idx += stride) {
      int m = cfg.m_list[idx / cfg.sequences_per_length];
      int k = static_cast<int>(idx % cfg.sequences_per_length);
      data.records[idx] = compute(m, k);
    }
  };

  if (threads <= 1) {
    worker(0, 1);
  } else {
    if (cfg.n <= 2 && cfg.noise.gate_dependent())
      CliffordGroup::get(cfg.n);  // warm the shared enumeration up front
    pauli_vec_basis(1 << cfg.n);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(worker, static_cast<size_t>(t), static_cast<size_t>(threads));
    for (auto &th : pool) th.join();
  }
  return data;
}

// ---------------------------------------------------------------------------
// Exact sequence averages (transfer recursion)
// ---------------------------------------------------------------------------

/// Exact uniform average of the survival probability over all |G|^m
/// sequences, for every m = 1..m_max, computed with one transfer pass.
///
/// State: for each group element g, the conditional average (over words of
/// the current length composing to g) of the word's noisy superoperator
/// applied to vec(rho). One step costs |G|^2 matrix-vector products; the
/// closing step applies the inverse element's own noise. Requires
/// time-independent noise on an enumerable group (n <= 2).
inline std::vector<double> exact_average_curve(int m_max, const NoiseModel &noise,
                                               const SpamSpec &spam) {
  if (noise.time_dependent())
    throw contract_error(
        "exact average requires time-independent noise; use run_experiment");
  const auto &grp = CliffordGroup::get(noise.n());
  const int d = noise.dim();
  const size_t gs = grp.size();

  std::vector<Mat> step(gs);       // Lambda_i o C_i
  std::vector<size_t> inv_idx(gs);
  for (size_t i = 0; i < gs; ++i) {
    step[i] = noise.channel(i, 1).mat * to_superoperator(grp[i]).mat;
    inv_idx[i] = grp.index_of(inverse(grp[i]));
  }
  // multiplication table product_index[i][g] = index of elements[i] * elements[g];
  // precomputed only when it fits comfortably (n = 1), looked up on the fly
  // otherwise.
  const bool tabulate = gs <= 1024;
  std::vector<std::vector<uint32_t>> prod;
  if (tabulate) {
    prod.assign(gs, std::vector<uint32_t>(gs));
    for (size_t i = 0; i < gs; ++i)
      for (size_t g = 0; g < gs; ++g)
        prod[i][g] = static_cast<uint32_t>(grp.index_of(compose(grp[i], grp[g])));
  }

  const CVec rho_vec = vec(spam.rho.rho);
  const CVec effect_vec = vec(spam.effect);
  size_t id = grp.index_of(CliffordElement::identity(noise.n()));

  std::vector<CVec> t(gs, CVec::Zero(d * d));
  t[id] = rho_vec;
  std::vector<CVec> next(gs, CVec::Zero(d * d));
  std::vector<double> curve;
  curve.reserve(m_max);
  const double inv_order = 1.0 / static_cast<double>(gs);
  for (int m = 1; m <= m_max; ++m) {
    for (auto &v : next) v.setZero();
    for (size_t g = 0; g < gs; ++g) {
      if (t[g].isZero(0)) continue;
      for (size_t i = 0; i < gs; ++i) {
        size_t target = tabulate ? prod[i][g]
                                 : grp.index_of(compose(grp[i], grp[g]));
        next[target] += step[i] * t[g];
      }
    }
    for (size_t g = 0; g < gs; ++g) t[g] = inv_order * next[g];

    double f = 0;
    for (size_t g = 0; g < gs; ++g) {
      CVec closed = step[inv_idx[g]] * t[g];
      f += (effect_vec.adjoint() * closed)(0, 0).real();
    }
    curve.push_back(f);
  }
  return curve;
}

inline double exact_average_fidelity(int m, const NoiseModel &noise,
                                     const SpamSpec &spam) {
  if (m < 1) throw contract_error("exact_average_fidelity: m >= 1");
  return exact_average_curve(m, noise, spam).back();
}

// ---------------------------------------------------------------------------
// Decay-model coefficients
// ---------------------------------------------------------------------------

/// Exact coefficients of the zeroth- and first-order decay models for
/// time-independent noise on an enumerable group. The first-order block
/// uses the conjugated averages Q = avg_i C_i^dag Lambda_i C_i and
/// R = avg_i Lambda_i o (C_i o Lambda o C_i^dag); q is the depolarizing
/// parameter of (Q o Lambda)_d.
struct ModelCoefficients {
  int d = 2;
  double a0 = 0, b0 = 0, p = 0;
  double a1 = 0, b1 = 0, c1 = 0, q = 0;
  std::vector<double> q_steps;  // per-step q_j (time-dependent noise only)

  double error_rate() const { return (d - 1) * (1.0 - p) / d; }

  double zeroth(int m) const { return a0 * std::pow(p, m) + b0; }

  double first(int m) const {
    double corr = m >= 2 ? c1 * (m - 1) * (q - p * p) * std::pow(p, m - 2) : 0.0;
    return a1 * std::pow(p, m) + b1 + corr;
  }
};

/// Grand average error operator over the group and time steps 1..steps.
inline Superoperator average_error_operator(const NoiseModel &noise,
                                            int steps = 1) {
  const auto &grp = CliffordGroup::get(noise.n());
  const int d = noise.dim();
  Mat lambda = Mat::Zero(d * d, d * d);
  for (int j = 1; j <= steps; ++j)
    for (size_t i = 0; i < grp.size(); ++i) lambda += noise.channel(i, j).mat;
  return Superoperator(d, lambda / (static_cast<double>(grp.size()) * steps));
}

/// Conjugated per-step average Q_j = avg_i C_i^dag Lambda_{i,j} C_i.
inline Superoperator conjugated_step_average(const NoiseModel &noise, int j) {
  const auto &grp = CliffordGroup::get(noise.n());
  const int d = noise.dim();
  Mat acc = Mat::Zero(d * d, d * d);
  for (size_t i = 0; i < grp.size(); ++i) {
    Mat u = to_superoperator(grp[i]).mat;
    acc += u.adjoint() * noise.channel(i, j).mat * u;
  }
  return Superoperator(d, acc / static_cast<double>(grp.size()));
}

namespace detail {

inline ModelCoefficients coefficients_impl(const NoiseModel &noise,
                                           const SpamSpec &spam, int m) {
  const auto &grp = CliffordGroup::get(noise.n());
  const int d = noise.dim();
  const size_t gs = grp.size();
  const int steps = noise.time_dependent() ? m + 1 : 1;

  Mat lambda = average_error_operator(noise, steps).mat;

  // final-step closing average R = avg_i Lambda_{i,m+1} o C_i Lambda C_i^dag
  Mat r_avg = Mat::Zero(d * d, d * d);
  const int final_step = noise.time_dependent() ? m + 1 : 1;
  for (size_t i = 0; i < gs; ++i) {
    Mat u = to_superoperator(grp[i]).mat;
    r_avg += noise.channel(i, final_step).mat * (u * lambda * u.adjoint());
  }
  r_avg /= static_cast<double>(gs);

  Superoperator lam_s(d, lambda);
  ModelCoefficients mc;
  mc.d = d;
  mc.p = depolarizing_parameter(lam_s);

  // depolarizing parameters q_j of (Q_j o Lambda); time-independent noise
  // has a single value
  Mat q1 = conjugated_step_average(noise, 1).mat;
  if (noise.time_dependent()) {
    mc.q_steps.resize(m);
    double sum = 0;
    for (int j = 1; j <= m; ++j) {
      Mat qj = j == 1 ? q1 : conjugated_step_average(noise, j).mat;
      mc.q_steps[j - 1] =
          depolarizing_parameter(Superoperator(d, qj * lambda));
      if (j >= 2) sum += mc.q_steps[j - 1];
    }
    mc.q = m >= 2 ? sum / (m - 1) : mc.q_steps[0];
  } else {
    mc.q = depolarizing_parameter(Superoperator(d, q1 * lambda));
  }

  const Mat mix = Mat::Identity(d, d) / double(d);
  const Mat &rho = spam.rho.rho;
  auto overlap = [&](const Mat &channel, const Mat &input) {
    return (spam.effect.adjoint() * unvec(channel * vec(input), d))
        .trace()
        .real();
  };
  mc.a0 = overlap(lambda, rho - mix);
  mc.b0 = overlap(lambda, mix);
  mc.c1 = mc.a0;
  mc.b1 = overlap(r_avg, mix);
  if (std::abs(mc.p) > 1e-12) {
    Mat q_rho = unvec(q1 * vec(rho), d);
    mc.a1 = overlap(lambda, q_rho / mc.p - rho + (mc.p - 1.0) / (mc.p * d) *
                                                     Mat::Identity(d, d)) +
            overlap(r_avg, rho / mc.p - mix / mc.p);
  } else {
    mc.a1 = std::numeric_limits<double>::quiet_NaN();  // p = 0: no decay scale
  }
  return mc;
}

}  // namespace detail

/// Time-independent noise: coefficients are m-free.
inline ModelCoefficients model_coefficients(const NoiseModel &noise,
                                            const SpamSpec &spam) {
  if (noise.time_dependent())
    throw contract_error(
        "model_coefficients: time-dependent noise needs the (noise, spam, m) "
        "overload, whose A1/B1/q carry the final-step and per-step averages");
  return detail::coefficients_impl(noise, spam, 1);
}

/// Time-dependent extension: A1(m), B1(m) use the step-(m+1) noise, and
/// q_steps carries the per-step depolarizing parameters q_j (q is their
/// j >= 2 mean). Reduces to the time-independent form when the noise is.
inline ModelCoefficients model_coefficients(const NoiseModel &noise,
                                            const SpamSpec &spam, int m) {
  if (m < 1) throw contract_error("model_coefficients: m >= 1");
  return detail::coefficients_impl(noise, spam, m);
}

// ---------------------------------------------------------------------------
// Noise-variation diagnostics
// ---------------------------------------------------------------------------

/// Per-step average deviation of the noise from the grand average error
/// operator, measured in the 1->1 Hermitian norm:
/// gamma_j = avg_i ||Lambda_{i,j} - Lambda||. The grand average runs over
/// gates and the m+1 time steps. Gate-independent noise short-circuits to
/// exact zeros.
inline std::vector<double> gamma_per_step(const NoiseModel &noise, int m,
                                          const OneOneNormOptions &opt = {}) {
  if (m < 1) throw contract_error("gamma_per_step: m >= 1");
  const int steps = m + 1;
  if (noise.mode() == NoiseMode::GateIndependent)
    return std::vector<double>(steps, 0.0);
  const auto &grp = CliffordGroup::get(noise.n());
  const int d = noise.dim();
  const size_t gs = grp.size();

  const int distinct =
      noise.time_dependent()
          ? std::min<int>(steps, static_cast<int>(noise.time_step_count()))
          : 1;
  Mat lambda = Mat::Zero(d * d, d * d);
  for (int j = 1; j <= steps; ++j)
    for (size_t i = 0; i < gs; ++i) lambda += noise.channel(i, j).mat;
  lambda /= static_cast<double>(gs) * steps;

  std::vector<double> per_step(steps);
  std::vector<double> cache(distinct, -1.0);
  for (int j = 1; j <= steps; ++j) {
    int slot = std::min(j, distinct) - 1;
    if (cache[slot] < 0) {
      double acc = 0;
      for (size_t i = 0; i < gs; ++i)
        acc += one_one_H_norm(
            Superoperator(d, noise.channel(i, j).mat - lambda), opt);
      cache[slot] = acc / static_cast<double>(gs);
    }
    per_step[j - 1] = cache[slot];
  }
  return per_step;
}

/// Elementary symmetric sum of order k of the per-step gammas: the bound
/// on the difference between the order-k and order-(k-1) fidelity models.
inline double perturbation_bound(int k, const std::vector<double> &gammas) {
  if (k < 0) throw contract_error("perturbation_bound: k >= 0");
  if (static_cast<size_t>(k) > gammas.size()) return 0.0;
  std::vector<double> e(k + 1, 0.0);
  e[0] = 1.0;
  for (double g : gammas)
    for (int t = k; t >= 1; --t) e[t] += g * e[t - 1];
  return e[k];
}

/// Time-independent form: C(m+1, k) gamma^k.
inline double perturbation_bound_time_independent(int k, double gamma, int m) {
  if (k < 0 || m < 1) throw contract_error("perturbation_bound: bad arguments");
  double binom = 1.0;
  for (int t = 1; t <= k; ++t)
    binom *= static_cast<double>(m + 2 - t) / static_cast<double>(t);
  return binom * std::pow(gamma, k);
}

// ---------------------------------------------------------------------------
// Trial planning (Hoeffding)
// ---------------------------------------------------------------------------

/// Sequences needed so that the empirical mean of a [a,b]-valued fidelity
/// estimate is within eps of the exact average with confidence 1 - delta:
/// k = ceil( ln(2/delta) (b-a)^2 / (2 eps^2) ). Independent of n and m.
/// delta >= 1 and b = a are degenerate and return 0.
inline int64_t hoeffding_k(double eps, double delta, double a, double b) {
  if (eps <= 0) throw domain_error("hoeffding_k: eps > 0");
  if (delta <= 0) throw domain_error("hoeffding_k: delta > 0");
  if (a < 0 || b > 1 || a > b) throw domain_error("hoeffding_k: need 0 <= a <= b <= 1");
  if (delta >= 1) return 0;
  double k = std::log(2.0 / delta) * (b - a) * (b - a) / (2.0 * eps * eps);
  return static_cast<int64_t>(std::ceil(k - 1e-12));
}

// ---------------------------------------------------------------------------
// Pathology probe
// ---------------------------------------------------------------------------

/// Detects inverse-like gate-dependent noise: apply single noisy gates that
/// map |psi> to each orthogonal computational-basis state and measure the
/// probability of still seeing psi. Honest noise leaves these probabilities
/// near (1-p)/d; inverse-gate noise pins them near 1.
struct PathologyProbe {
  std::vector<double> probabilities;
  double threshold = 0.5;
  bool flagged = false;
};

inline PathologyProbe pathology_probe(const NoiseModel &noise,
                                      const SpamSpec &spam,
                                      double threshold = 0.5) {
  const auto &grp = CliffordGroup::get(noise.n());
  const int n = noise.n(), d = noise.dim();
  PathologyProbe report;
  report.threshold = threshold;
  int over = 0;
  for (int s = 1; s < d; ++s) {
    BitVec px(n), pz(n);
    for (int q = 0; q < n; ++q)
      if ((s >> (n - 1 - q)) & 1) px.set(q, true);
    CliffordElement flip = pauli_element(n, px, pz);
    size_t idx = grp.index_of(flip);
    Superoperator gate = to_superoperator(flip);
    Superoperator noisy(d, noise.channel(idx, 1).mat * gate.mat);
    double prob = survival_probability(noisy, spam);
    report.probabilities.push_back(prob);
    if (prob > threshold) ++over;
  }
  report.flagged = 2 * over > static_cast<int>(report.probabilities.size());
  return report;
}

}  // namespace rblab

#endif  // RBLAB_ENGINE_HPP_
