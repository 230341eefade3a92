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

#ifndef RBLAB_METRICS_HPP_
#define RBLAB_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <random>

#include "rblab/channels.hpp"
#include "rblab/errors.hpp"
#include "rblab/stats.hpp"

namespace rblab {

// ---------------------------------------------------------------------------
// Diamond distance for generalized Pauli channels
// ---------------------------------------------------------------------------

/// Difference of two Pauli weight vectors; sums to zero.
struct PauliDiff {
  int d = 0;
  Eigen::VectorXd v;

  PauliDiff() = default;
  PauliDiff(const PauliChannel &a, const PauliChannel &b) {
    if (a.d != b.d) throw shape_error("PauliDiff: dimension mismatch");
    d = a.d;
    v = a.q - b.q;
    if (std::abs(v.sum()) > 1e-12)
      throw contract_error("PauliDiff: difference does not sum to zero");
  }
};

/// Feasible objective values of the diamond-norm semidefinite program,
/// evaluated at explicit primal/dual points. Agreement of the two values
/// certifies the closed form (each is half the diamond distance).
struct CertificatePair {
  double primal_lb = 0;   // <J(Phi), W> at W = Pi+/d, rho = I/d
  double dual_ub = 0;     // ||tr_1 Z||_inf at Z = Pi+ J(Phi) Pi+
  double dual_slack = 0;  // min eigenvalue of Z - J(Phi); >= 0 up to roundoff
  bool tight(double tol = 1e-10) const {
    return std::abs(primal_lb - dual_ub) <= tol && dual_slack >= -tol;
  }
};

struct DiamondResult {
  double value = 0;
  CertificatePair certificate;
};

namespace detail {

/// Partial trace over the first tensor factor of a (d*d) x (d*d) matrix.
inline Mat trace_out_first(const Mat &m, int d) {
  Mat out = Mat::Zero(d, d);
  for (int a = 0; a < d; ++a) out += m.block(a * d, a * d, d, d);
  return out;
}

}  // namespace detail

/// Diamond distance ||E1 - E2||_diamond = ||v||_1 for generalized Pauli
/// channels, together with matching primal/dual certificates built from
/// the generalized Bell basis |psi_i> = (P_i x I)|psi_0>.
inline DiamondResult pauli_diamond_distance(const PauliChannel &e1,
                                            const PauliChannel &e2) {
  PauliDiff diff(e1, e2);
  const int d = diff.d;
  DiamondResult res;
  res.value = diff.v.cwiseAbs().sum();

  const auto &basis = pauli_basis(d);
  CVec psi0 = CVec::Zero(d * d);
  for (int i = 0; i < d; ++i) psi0[i * d + i] = 1.0 / std::sqrt(double(d));

  // J(Phi) = d sum_i v_i |psi_i><psi_i|, diagonal in the Bell-type basis.
  Mat j = Mat::Zero(d * d, d * d);
  Mat proj_plus = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d * d; ++i) {
    CVec psi_i = kron(basis[i], Mat::Identity(d, d)) * psi0;
    Mat pp = psi_i * psi_i.adjoint();
    j += double(d) * diff.v[i] * pp;
    if (diff.v[i] >= 0) proj_plus += pp;
  }

  Mat w = proj_plus / double(d);
  res.certificate.primal_lb = (j.adjoint() * w).trace().real();

  // The positive part of J is dual-feasible (Z - J = -Pi_- J Pi_- >= 0)
  // and its partial trace is (sum of positive v_i) times the identity.
  Mat z = proj_plus * j * proj_plus;
  Eigen::SelfAdjointEigenSolver<Mat> feas(hermitize(z - j));
  res.certificate.dual_slack = feas.eigenvalues().minCoeff();
  Eigen::SelfAdjointEigenSolver<Mat> tr1(
      hermitize(detail::trace_out_first(z, d)));
  res.certificate.dual_ub = tr1.eigenvalues().cwiseAbs().maxCoeff();
  return res;
}

/// ||Lambda - I||_diamond = 2 (d+1) r / d, valid for generalized Pauli
/// noise only.
inline double diamond_from_r(double r, int d) {
  if (r < 0 || r > 1) throw domain_error("diamond_from_r: r in [0,1]");
  return 2.0 * (d + 1) * r / double(d);
}

// ---------------------------------------------------------------------------
// 1->1 norm on Hermitian inputs
// ---------------------------------------------------------------------------

struct OneOneNormOptions {
  int restarts = 64;
  int max_iterations = 500;
  double tolerance = 1e-6;   // documented optimizer tolerance
  double grid_degrees = 0.5; // d = 2 Bloch-sphere sweep resolution
  uint64_t seed = 0x5eed;
};

namespace detail {

/// Trace norm of a Hermitian matrix.
inline double trace_norm_herm(const Mat &m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  return es.eigenvalues().cwiseAbs().sum();
}

inline double one_one_objective(const Superoperator &s, const CVec &psi) {
  Mat x = hermitize(unvec(s.mat * vec(Mat(psi * psi.adjoint())), s.d));
  return trace_norm_herm(x);
}

/// Monotone ascent: alternate the optimal dual sign operator with the top
/// eigenvector of the pulled-back objective.
inline double ascend(const Superoperator &s, CVec psi, int max_iter,
                     double tol) {
  double val = one_one_objective(s, psi);
  for (int it = 0; it < max_iter; ++it) {
    Mat x = hermitize(unvec(s.mat * vec(Mat(psi * psi.adjoint())), s.d));
    Eigen::SelfAdjointEigenSolver<Mat> es(x);
    Mat g = Mat::Zero(s.d, s.d);
    for (int k = 0; k < s.d; ++k) {
      double lam = es.eigenvalues()[k];
      g += (lam >= 0 ? 1.0 : -1.0) * es.eigenvectors().col(k) *
           es.eigenvectors().col(k).adjoint();
    }
    Mat m = hermitize(unvec(s.mat.adjoint() * vec(g), s.d));
    Eigen::SelfAdjointEigenSolver<Mat> em(m);
    CVec cand = em.eigenvectors().col(s.d - 1);
    double cval = one_one_objective(s, cand);
    if (cval <= val + tol * 1e-3) {
      val = std::max(val, cval);
      break;
    }
    val = cval;
    psi = cand;
  }
  return val;
}

/// Dense Bloch-sphere sweep (d = 2): closed-form 2x2 trace norm per point.
inline double bloch_grid_max(const Superoperator &s, double step_deg) {
  const double step = step_deg * M_PI / 180.0;
  const int n_theta = static_cast<int>(std::ceil(M_PI / step));
  const int n_phi = static_cast<int>(std::ceil(2 * M_PI / step));
  double best = 0;
  for (int it = 0; it <= n_theta; ++it) {
    double theta = std::min(it * step, M_PI);
    double c = std::cos(theta / 2), sn = std::sin(theta / 2);
    for (int ip = 0; ip < n_phi; ++ip) {
      double phi = ip * step;
      CVec psi(2);
      psi << c, cxd(std::cos(phi), std::sin(phi)) * sn;
      CVec out = s.mat * vec(Mat(psi * psi.adjoint()));
      // Hermitian 2x2 trace norm from trace and determinant
      double a = out[0].real(), dgn = out[3].real();
      cxd b = 0.5 * (out[2] + std::conj(out[1]));
      double mid = 0.5 * (a + dgn);
      double disc = std::sqrt(std::max(0.0, 0.25 * (a - dgn) * (a - dgn) +
                                                std::norm(b)));
      best = std::max(best, std::abs(mid + disc) + std::abs(mid - disc));
    }
  }
  return best;
}

}  // namespace detail

/// max over Hermitian A with ||A||_1 <= 1 of ||R(A)||_1. The extreme
/// points of that ball are +/- rank-one projectors, so the search runs
/// over pure states: multi-start ascent everywhere, plus a dense Bloch
/// grid at d = 2. The reported value is the larger of the two and is a
/// certified lower bound tight to the optimizer tolerance.
inline double one_one_H_norm(const Superoperator &r,
                             const OneOneNormOptions &opt = {}) {
  if (!is_hermiticity_preserving(r, 1e-8))
    throw contract_error("one_one_H_norm: map is not Hermiticity-preserving");
  double best = 0;
  std::mt19937_64 rng(opt.seed);
  for (int t = 0; t < opt.restarts; ++t) {
    CVec psi = random_pure_state(r.d, rng);
    best = std::max(best,
                    detail::ascend(r, psi, opt.max_iterations, opt.tolerance));
  }
  for (int k = 0; k < r.d; ++k) {
    CVec psi = CVec::Zero(r.d);
    psi[k] = 1;
    best = std::max(best,
                    detail::ascend(r, psi, opt.max_iterations, opt.tolerance));
  }
  if (r.d == 2)
    best = std::max(best, detail::bloch_grid_max(r, opt.grid_degrees));
  return best;
}

// ---------------------------------------------------------------------------
// Fidelity gaps and bounds
// ---------------------------------------------------------------------------

/// |Fbar(E1) - Fbar(E2)| against the identity.
inline double delta_F(const Superoperator &e1, const Superoperator &e2) {
  if (e1.d != e2.d) throw shape_error("delta_F: dimension mismatch");
  return std::abs(average_fidelity(e1) - average_fidelity(e2));
}

/// Minimum-fidelity bound F_min >= 1 - ||E1 - E2||_diamond for Pauli
/// channel pairs. The bound is reported as-is; `vacuous` is set when it is
/// negative (no clamping).
struct MinFidelityBound {
  double bound = 0;
  double diamond = 0;
  bool vacuous = false;
};

inline MinFidelityBound min_fidelity_bound(const PauliChannel &e1,
                                           const PauliChannel &e2) {
  MinFidelityBound out;
  out.diamond = pauli_diamond_distance(e1, e2).value;
  out.bound = 1.0 - out.diamond;
  out.vacuous = out.bound < 0;
  return out;
}

}  // namespace rblab

#endif  // RBLAB_METRICS_HPP_
