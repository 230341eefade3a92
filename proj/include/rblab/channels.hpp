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

#ifndef RBLAB_CHANNELS_HPP_
#define RBLAB_CHANNELS_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "rblab/clifford.hpp"
#include "rblab/errors.hpp"
#include "rblab/stats.hpp"

namespace rblab {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

constexpr double kStructTol = 1e-10;  // structural identities
constexpr double kProbTol = 1e-12;    // probability normalization
constexpr int kDenseQubitLimit = 3;   // 64x64 superoperators at most

inline Mat kron(const Mat &a, const Mat &b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Column-stacking vectorization: vec(M)[i + d*j] = M(i, j).
inline CVec vec(const Mat &m) {
  CVec v(m.rows() * m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) v[i + m.rows() * j] = m(i, j);
  return v;
}

inline Mat unvec(const CVec &v, int d) {
  Mat m(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) m(i, j) = v[i + d * j];
  return m;
}

inline Mat hermitize(const Mat &m) { return 0.5 * (m + m.adjoint()); }

// ---------------------------------------------------------------------------
// Pauli basis (I, X, Y, Z in lexicographic tensor order, qubit 0 leftmost)
// ---------------------------------------------------------------------------

namespace detail {

inline const Mat &sigma(int k) {
  static const Mat mats = [] {
    Mat m(2, 8);
    m.setZero();
    m.block(0, 0, 2, 2) << 1, 0, 0, 1;                  // I
    m.block(0, 2, 2, 2) << 0, 1, 1, 0;                  // X
    m.block(0, 4, 2, 2) << 0, cxd(0, -1), cxd(0, 1), 0; // Y
    m.block(0, 6, 2, 2) << 1, 0, 0, -1;                 // Z
    return m;
  }();
  static const Mat s[4] = {mats.block(0, 0, 2, 2), mats.block(0, 2, 2, 2),
                           mats.block(0, 4, 2, 2), mats.block(0, 6, 2, 2)};
  return s[k];
}

}  // namespace detail

/// Dense n-qubit Pauli basis; index digits base 4 give per-qubit letters,
/// most significant digit = qubit 0. P_0 is the identity.
inline const std::vector<Mat> &pauli_basis(int d) {
  static std::mutex mu;
  static std::unordered_map<int, std::vector<Mat>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  int n = 0;
  while ((1 << n) < d) ++n;
  if ((1 << n) != d) throw contract_error("pauli_basis: d must be a power of 2");
  std::vector<Mat> basis;
  basis.reserve(static_cast<size_t>(d) * d);
  for (int k = 0; k < d * d; ++k) {
    Mat p = Mat::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
      int digit = (k >> (2 * (n - 1 - q))) & 3;
      p = kron(p, detail::sigma(digit));
    }
    basis.push_back(std::move(p));
  }
  return cache.emplace(d, std::move(basis)).first->second;
}

/// Pauli basis index of an (x, z) support pattern.
inline int pauli_index(int n, const BitVec &x, const BitVec &z) {
  int k = 0;
  for (int q = 0; q < n; ++q) {
    int digit = x.get(q) ? (z.get(q) ? 2 : 1) : (z.get(q) ? 3 : 0);
    k = 4 * k + digit;
  }
  return k;
}

/// Unitary basis-change matrix whose columns are vec(P_k)/sqrt(d).
inline const Mat &pauli_vec_basis(int d) {
  static std::mutex mu;
  static std::unordered_map<int, Mat> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  const auto &basis = pauli_basis(d);
  Mat b(d * d, d * d);
  for (int k = 0; k < d * d; ++k) b.col(k) = vec(basis[k]) / std::sqrt(double(d));
  return cache.emplace(d, std::move(b)).first->second;
}

// ---------------------------------------------------------------------------
// Core representations
// ---------------------------------------------------------------------------

/// Linear map on L(C^d) as a d^2 x d^2 matrix acting on column-stacked
/// operators.
struct Superoperator {
  int d = 0;
  Mat mat;

  Superoperator() = default;
  Superoperator(int d_, Mat m) : d(d_), mat(std::move(m)) {
    if (mat.rows() != d * d || mat.cols() != d * d)
      throw shape_error("Superoperator: matrix must be d^2 x d^2");
  }

  static Superoperator identity(int d) {
    return Superoperator(d, Mat::Identity(d * d, d * d));
  }
};

struct DensityMatrix {
  int d = 0;
  Mat rho;

  DensityMatrix() = default;
  DensityMatrix(int d_, Mat r) : d(d_), rho(std::move(r)) {
    if (rho.rows() != d || rho.cols() != d)
      throw shape_error("DensityMatrix: must be d x d");
  }

  static DensityMatrix pure(const CVec &psi) {
    return DensityMatrix(static_cast<int>(psi.size()),
                         psi * psi.adjoint() / psi.squaredNorm());
  }
  static DensityMatrix basis_state(int d, int k) {
    Mat r = Mat::Zero(d, d);
    r(k, k) = 1;
    return DensityMatrix(d, std::move(r));
  }
  static DensityMatrix maximally_mixed(int d) {
    return DensityMatrix(d, Mat::Identity(d, d) / double(d));
  }
};

inline void validate_density(const DensityMatrix &r, double tol = 1e-10) {
  if (std::abs(r.rho.trace() - cxd(1, 0)) > 1e-12)
    throw contract_error("density matrix trace != 1");
  if ((r.rho - r.rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw contract_error("density matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(r.rho));
  if (es.eigenvalues().minCoeff() < -tol)
    throw contract_error("density matrix not positive semidefinite");
}

/// POVM element: Hermitian with spectrum in [0, 1] (within slack).
inline void validate_effect(const Mat &e, double tol = 1e-10) {
  if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw contract_error("POVM element not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(e));
  if (es.eigenvalues().minCoeff() < -tol || es.eigenvalues().maxCoeff() > 1 + tol)
    throw contract_error("POVM element spectrum outside [0,1]");
}

struct KrausSet {
  int d = 0;
  std::vector<Mat> ops;
};

/// Generalized Pauli channel: probability weights over the Pauli basis,
/// q[0] attached to the identity component.
struct PauliChannel {
  int d = 0;
  Eigen::VectorXd q;

  PauliChannel() = default;
  PauliChannel(int d_, Eigen::VectorXd q_) : d(d_), q(std::move(q_)) {
    if (q.size() != d * d) throw shape_error("PauliChannel: q must have d^2 entries");
    if (q.minCoeff() < -kProbTol || std::abs(q.sum() - 1.0) > kProbTol)
      throw contract_error("PauliChannel: weights must be a distribution");
  }
};

/// Process matrix in the Pauli basis (P_0 = identity).
struct ChiMatrix {
  int d = 0;
  Mat chi;
};

// ---------------------------------------------------------------------------
// Conversions and basic operations
// ---------------------------------------------------------------------------

inline Superoperator compose(const Superoperator &a, const Superoperator &b) {
  if (a.d != b.d) throw shape_error("Superoperator compose: dimension mismatch");
  return Superoperator(a.d, a.mat * b.mat);
}

inline DensityMatrix apply(const Superoperator &s, const DensityMatrix &rho) {
  if (s.d != rho.d) throw shape_error("apply: dimension mismatch");
  return DensityMatrix(s.d, unvec(s.mat * vec(rho.rho), s.d));
}

inline Superoperator kraus_to_super(const KrausSet &k) {
  if (k.ops.empty()) throw contract_error("kraus_to_super: empty Kraus set");
  const int d = k.d;
  Mat s = Mat::Zero(d * d, d * d);
  for (const Mat &a : k.ops) {
    if (a.rows() != d || a.cols() != d)
      throw shape_error("kraus_to_super: operator shape mismatch");
    s += kron(a.conjugate(), a);
  }
  return Superoperator(d, std::move(s));
}

/// Choi matrix J = d (Phi x I)(|psi0><psi0|) on C^d (x) C^d with the
/// channel acting on the first factor; trace d for trace-preserving maps.
inline Mat super_to_choi(const Superoperator &s) {
  const int d = s.d;
  Mat j(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i)
      for (int b = 0; b < d; ++b)
        for (int jj = 0; jj < d; ++jj)
          j(a * d + i, b * d + jj) = s.mat(a + d * b, i + d * jj);
  return j;
}

inline Superoperator choi_to_super(const Mat &j, int d) {
  Mat s(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i)
      for (int b = 0; b < d; ++b)
        for (int jj = 0; jj < d; ++jj)
          s(a + d * b, i + d * jj) = j(a * d + i, b * d + jj);
  return Superoperator(d, std::move(s));
}

/// Kraus operators from the spectral decomposition of the Choi matrix;
/// eigenvalues below tol are dropped.
inline KrausSet super_to_kraus(const Superoperator &s, double tol = 1e-12) {
  const int d = s.d;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(super_to_choi(s)));
  KrausSet k;
  k.d = d;
  for (int e = 0; e < d * d; ++e) {
    double lam = es.eigenvalues()[e];
    if (lam < tol) continue;
    Mat a(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) a(r, c) = es.eigenvectors()(r * d + c, e);
    k.ops.push_back(std::sqrt(lam) * a);
  }
  return k;
}

inline Superoperator unitary_channel(const Mat &u) {
  return Superoperator(static_cast<int>(u.rows()), kron(u.conjugate(), u));
}

inline Superoperator pauli_channel_to_super(const PauliChannel &pc) {
  const auto &basis = pauli_basis(pc.d);
  Mat s = Mat::Zero(pc.d * pc.d, pc.d * pc.d);
  for (int k = 0; k < pc.d * pc.d; ++k)
    if (pc.q[k] != 0.0) s += pc.q[k] * kron(basis[k].conjugate(), basis[k]);
  return Superoperator(pc.d, std::move(s));
}

inline ChiMatrix super_to_chi(const Superoperator &s) {
  const int d = s.d;
  const auto &basis = pauli_basis(d);
  ChiMatrix x;
  x.d = d;
  x.chi = Mat(d * d, d * d);
  for (int i = 0; i < d * d; ++i)
    for (int j = 0; j < d * d; ++j) {
      Mat term = kron(basis[j].transpose(), basis[i]);
      x.chi(i, j) = (term.adjoint() * s.mat).trace() / double(d * d);
    }
  return x;
}

inline Superoperator chi_to_super(const ChiMatrix &x) {
  const int d = x.d;
  const auto &basis = pauli_basis(d);
  Mat s = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d * d; ++i)
    for (int j = 0; j < d * d; ++j)
      if (x.chi(i, j) != cxd(0, 0))
        s += x.chi(i, j) * kron(basis[j].transpose(), basis[i]);
  return Superoperator(d, std::move(s));
}

/// Reads off the Pauli weights of a generalized Pauli channel; throws if
/// the chi matrix has off-diagonal mass above tol.
inline PauliChannel super_to_pauli_channel(const Superoperator &s,
                                           double tol = 1e-9) {
  ChiMatrix x = super_to_chi(s);
  const int d2 = s.d * s.d;
  Eigen::VectorXd q(d2);
  double off = 0;
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j) {
      if (i == j)
        q[i] = x.chi(i, i).real();
      else
        off = std::max(off, std::abs(x.chi(i, j)));
    }
  if (off > tol)
    throw contract_error("super_to_pauli_channel: channel is not Pauli-diagonal");
  for (int i = 0; i < d2; ++i) q[i] = std::max(q[i], 0.0);
  q /= q.sum();
  return PauliChannel(s.d, std::move(q));
}

// ---------------------------------------------------------------------------
// Structural checks
// ---------------------------------------------------------------------------

inline bool is_trace_preserving(const Superoperator &s, double tol = kStructTol) {
  CVec vi = vec(Mat::Identity(s.d, s.d));
  return ((s.mat.adjoint() * vi - vi).cwiseAbs().maxCoeff()) <= tol;
}

inline bool is_unital(const Superoperator &s, double tol = kStructTol) {
  CVec vi = vec(Mat::Identity(s.d, s.d));
  return ((s.mat * vi - vi).cwiseAbs().maxCoeff()) <= tol;
}

inline bool is_hermiticity_preserving(const Superoperator &s,
                                      double tol = kStructTol) {
  Mat j = super_to_choi(s);
  return (j - j.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_completely_positive(const Superoperator &s,
                                   double tol = kStructTol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(super_to_choi(s)));
  return es.eigenvalues().minCoeff() >= -tol;
}

inline bool is_cptp(const Superoperator &s, double tol = kStructTol) {
  return is_hermiticity_preserving(s, tol) && is_trace_preserving(s, tol) &&
         is_completely_positive(s, tol);
}

// ---------------------------------------------------------------------------
// Depolarizing family, fidelities, rates
// ---------------------------------------------------------------------------

/// rho -> p rho + (1-p) tr(rho) I/d. Complete positivity bounds p to
/// [-1/(d^2-1), 1].
inline Superoperator depolarizing(double p, int d) {
  if (p < -1.0 / (d * d - 1) - 1e-15 || p > 1.0 + 1e-15)
    throw domain_error("depolarizing: p outside CP range");
  CVec vi = vec(Mat::Identity(d, d));
  Mat s = p * Mat::Identity(d * d, d * d) +
          ((1.0 - p) / d) * (vi * vi.transpose());
  return Superoperator(d, std::move(s));
}

inline PauliChannel depolarizing_pauli_channel(double p, int d) {
  Eigen::VectorXd q =
      Eigen::VectorXd::Constant(d * d, (1.0 - p) / double(d * d));
  q[0] = ((d * d - 1) * p + 1.0) / double(d * d);
  return PauliChannel(d, std::move(q));
}

/// Average gate fidelity to the identity, (tr S + d) / (d^2 + d).
inline double average_fidelity(const Superoperator &s) {
  if (!is_trace_preserving(s, 1e-8))
    throw contract_error("average_fidelity: channel is not trace-preserving");
  return (s.mat.trace().real() + s.d) / double(s.d * s.d + s.d);
}

inline double chi00(const Superoperator &s) {
  if (!is_trace_preserving(s, 1e-8))
    throw contract_error("chi00: channel is not trace-preserving");
  return s.mat.trace().real() / double(s.d * s.d);
}

/// Average error rate r = 1 - Fbar = (d-1)(1-p)/d.
inline double error_rate(const Superoperator &s) {
  return 1.0 - average_fidelity(s);
}

/// Pauli-channel error rate r_P = (d+1) r / d.
inline double pauli_error_rate(double r, int d) {
  if (r < 0 || r > 1) throw domain_error("pauli_error_rate: r in [0,1]");
  return (d + 1) * r / double(d);
}

/// Depolarizing parameter with the same average fidelity, p = (d F - 1)/(d - 1).
inline double depolarizing_parameter(const Superoperator &s) {
  return (s.d * average_fidelity(s) - 1.0) / double(s.d - 1);
}

// ---------------------------------------------------------------------------
// Clifford realization and exact twirl
// ---------------------------------------------------------------------------

/// Dense superoperator of conjugation by a Clifford element; a signed
/// permutation in the normalized Pauli basis, hence real orthogonal there.
inline Superoperator to_superoperator(const CliffordElement &g,
                                      int dense_limit = kDenseQubitLimit) {
  if (g.n > dense_limit)
    throw capacity_error("to_superoperator: n exceeds dense limit");
  const int d = 1 << g.n;
  Mat t = Mat::Zero(d * d, d * d);
  for (int kin = 0; kin < d * d; ++kin) {
    // unpack index digits into (x, z) support
    BitVec x(g.n), z(g.n);
    int k = kin;
    for (int q = g.n - 1; q >= 0; --q) {
      int digit = k % 4;
      k /= 4;
      if (digit == 1 || digit == 2) x.set(q, true);
      if (digit == 2 || digit == 3) z.set(q, true);
    }
    PauliOp image = conjugate_pauli(g, hermitian_pauli(g.n, x, z));
    int kout = pauli_index(g.n, image.x, image.z);
    t(kout, kin) = sign_vs_hermitian(image) ? -1.0 : 1.0;
  }
  const Mat &b = pauli_vec_basis(d);
  return Superoperator(d, b * t * b.adjoint());
}

/// Real Pauli-transfer matrix T_ij = tr(P_i S(P_j)) / d.
inline Eigen::MatrixXd pauli_transfer(const Superoperator &s) {
  const Mat &b = pauli_vec_basis(s.d);
  Mat t = b.adjoint() * s.mat * b;
  if (t.imag().cwiseAbs().maxCoeff() > 1e-9)
    throw contract_error("pauli_transfer: map is not Hermiticity-preserving");
  return t.real();
}

/// Exact twirl over a fully enumerated Clifford group:
/// (1/|G|) sum_j U_j Lambda U_j^dag. The output is the depolarizing
/// channel with the same average fidelity as the input.
inline Superoperator twirl_exact(const Superoperator &lambda,
                                 const std::vector<CliffordElement> &group) {
  if (group.empty()) throw contract_error("twirl_exact: empty group");
  const int n = group.front().n;
  if ((1 << n) != lambda.d)
    throw shape_error("twirl_exact: group and channel dimension mismatch");
  if (group.size() != clifford_group_order(n))
    throw contract_error("twirl_exact: group list is not the full enumeration");
  Mat acc = Mat::Zero(lambda.d * lambda.d, lambda.d * lambda.d);
  for (const CliffordElement &g : group) {
    Mat u = to_superoperator(g).mat;
    acc += u * lambda.mat * u.adjoint();
  }
  return Superoperator(lambda.d, acc / double(group.size()));
}

// ---------------------------------------------------------------------------
// Common noise constructors
// ---------------------------------------------------------------------------

inline Superoperator amplitude_damping(double gamma) {
  if (gamma < 0 || gamma > 1) throw domain_error("amplitude_damping: gamma in [0,1]");
  KrausSet k;
  k.d = 2;
  Mat a0(2, 2), a1(2, 2);
  a0 << 1, 0, 0, std::sqrt(1 - gamma);
  a1 << 0, std::sqrt(gamma), 0, 0;
  k.ops = {a0, a1};
  return kraus_to_super(k);
}

/// exp(-i theta/2 sigma_axis) on qubit q of an n-qubit register;
/// axis in {0: x, 1: y, 2: z}.
inline Superoperator single_qubit_rotation(int n, int q, int axis, double theta) {
  if (axis < 0 || axis > 2) throw domain_error("rotation axis must be x, y or z");
  Mat u = Mat::Identity(1, 1);
  Mat r = std::cos(theta / 2) * detail::sigma(0) -
          cxd(0, 1) * std::sin(theta / 2) * detail::sigma(axis + 1);
  for (int i = 0; i < n; ++i) u = kron(u, i == q ? r : detail::sigma(0));
  return unitary_channel(u);
}

/// Haar-ish random pure state (Gaussian components, normalized).
inline CVec random_pure_state(int d, std::mt19937_64 &rng) {
  CVec psi(d);
  for (int i = 0; i < d; ++i) {
    double u1 = std::max(uniform01(rng), 1e-300), u2 = uniform01(rng);
    double r = std::sqrt(-2.0 * std::log(u1));
    psi[i] = cxd(r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2));
  }
  psi.normalize();
  return psi;
}

}  // namespace rblab

#endif  // RBLAB_CHANNELS_HPP_
