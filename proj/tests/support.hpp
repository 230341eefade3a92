// Test-side oracles. These deliberately avoid the library code paths they
// are used to check: dense unitaries come from breadth-first search over
// dense generator products, not from the tableau decomposition.

#ifndef RBLAB_TESTS_SUPPORT_HPP_
#define RBLAB_TESTS_SUPPORT_HPP_

#include <random>
#include <vector>

#include "rblab/channels.hpp"
#include "rblab/clifford.hpp"
#include "rblab/engine.hpp"

namespace rblab::testsupport {

/// Dense matrix of P = i^phase * X^x Z^z (literal product, qubit 0 leftmost).
inline Mat dense_pauli(const PauliOp &p) {
  static const cxd iunit(0, 1);
  Mat m = Mat::Identity(1, 1);
  for (int q = 0; q < p.n; ++q) {
    Mat f = Mat::Identity(2, 2);
    if (p.x.get(q)) f = detail::sigma(1) * f;
    if (p.z.get(q)) f = f * detail::sigma(3);
    m = kron(m, f);
  }
  cxd phase = std::pow(iunit, static_cast<int>(p.phase));
  return phase * m;
}

inline Mat dense_gate(int n, const Gate &g) {
  const int d = 1 << n;
  Mat u = Mat::Identity(d, d);
  auto embed1 = [&](const Mat &m, int q) {
    Mat out = Mat::Identity(1, 1);
    for (int i = 0; i < n; ++i)
      out = kron(out, i == q ? m : Mat::Identity(2, 2));
    return out;
  };
  switch (g.kind) {
    case GateKind::X:
      return embed1(detail::sigma(1), g.q0);
    case GateKind::Y:
      return embed1(detail::sigma(2), g.q0);
    case GateKind::Z:
      return embed1(detail::sigma(3), g.q0);
    case GateKind::H: {
      Mat h(2, 2);
      h << 1, 1, 1, -1;
      return embed1(h / std::sqrt(2.0), g.q0);
    }
    case GateKind::S: {
      Mat s(2, 2);
      s << 1, 0, 0, cxd(0, 1);
      return embed1(s, g.q0);
    }
    case GateKind::CNOT: {
      Mat c = Mat::Zero(d, d);
      for (int b = 0; b < d; ++b) {
        int cbit = (b >> (n - 1 - g.q0)) & 1;
        int out = cbit ? b ^ (1 << (n - 1 - g.q1)) : b;
        c(out, b) = 1;
      }
      return c;
    }
  }
  return u;
}

inline Mat dense_from_seq(int n, const GeneratorSeq &seq) {
  const int d = 1 << n;
  Mat u = Mat::Identity(d, d);
  for (const Gate &g : seq) u = dense_gate(n, g) * u;  // circuit order
  return u;
}

inline bool same_up_to_phase(const Mat &a, const Mat &b, double tol = 1e-9) {
  cxd ip = (a.adjoint() * b).trace();
  if (std::abs(ip) < tol) return false;
  cxd phase = ip / std::abs(ip);
  return (a * phase - b).cwiseAbs().maxCoeff() < tol;
}

/// The 24 single-qubit Clifford unitaries (mod phase), generated by dense
/// breadth-first products of H and S only.
inline const std::vector<Mat> &single_qubit_unitaries() {
  static const std::vector<Mat> table = [] {
    std::vector<Mat> found;
    std::vector<Mat> frontier = {Mat::Identity(2, 2)};
    found.push_back(frontier[0]);
    Mat h(2, 2), s(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    s << 1, 0, 0, cxd(0, 1);
    while (!frontier.empty()) {
      std::vector<Mat> next;
      for (const Mat &u : frontier)
        for (const Mat *g : {&h, &s}) {
          Mat v = (*g) * u;
          bool fresh = true;
          for (const Mat &w : found)
            if (same_up_to_phase(v, w)) {
              fresh = false;
              break;
            }
          if (fresh) {
            found.push_back(v);
            next.push_back(v);
          }
        }
      frontier = std::move(next);
    }
    return found;
  }();
  return table;
}

/// Dense unitary realizing a single-qubit element, found by matching the
/// conjugation action on X and Z (independent of decompose()).
inline Mat dense_oracle_n1(const CliffordElement &g) {
  Mat ix = dense_pauli(conjugate_pauli(g, PauliOp::single_x(1, 0)));
  Mat iz = dense_pauli(conjugate_pauli(g, PauliOp::single_z(1, 0)));
  const Mat x = detail::sigma(1), z = detail::sigma(3);
  for (const Mat &u : single_qubit_unitaries()) {
    if ((u * x * u.adjoint() - ix).cwiseAbs().maxCoeff() < 1e-9 &&
        (u * z * u.adjoint() - iz).cwiseAbs().maxCoeff() < 1e-9)
      return u;
  }
  throw std::logic_error("no dense unitary matches element action");
}

/// Random CPTP channel from a Stinespring isometry (QR of a Gaussian block).
inline Superoperator random_cptp(int d, int kraus_count, std::mt19937_64 &rng) {
  Mat g(d * kraus_count, d);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      double u1 = std::max(uniform01(rng), 1e-300), u2 = uniform01(rng);
      double r = std::sqrt(-2 * std::log(u1));
      g(i, j) = cxd(r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2));
    }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(d * kraus_count, d);
  KrausSet ks;
  ks.d = d;
  for (int k = 0; k < kraus_count; ++k)
    ks.ops.push_back(q.block(k * d, 0, d, d));
  return kraus_to_super(ks);
}

inline Mat random_unitary(int d, std::mt19937_64 &rng) {
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double u1 = std::max(uniform01(rng), 1e-300), u2 = uniform01(rng);
      double r = std::sqrt(-2 * std::log(u1));
      g(i, j) = cxd(r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2));
    }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  // fix phases so the factorization is unique-ish
  Mat rm = q.adjoint() * g;
  for (int i = 0; i < d; ++i) {
    cxd ph = rm(i, i) / std::abs(rm(i, i));
    q.col(i) *= ph;
  }
  return q;
}

inline PauliChannel random_pauli_channel(int d, std::mt19937_64 &rng) {
  Eigen::VectorXd q(d * d);
  double sum = 0;
  for (int i = 0; i < d * d; ++i) {
    q[i] = -std::log(std::max(uniform01(rng), 1e-300));
    sum += q[i];
  }
  q /= sum;
  return PauliChannel(d, std::move(q));
}

/// Pauli channel concentrated near the identity: q0 = 1 - eps.
inline PauliChannel near_identity_pauli_channel(int d, double eps,
                                                std::mt19937_64 &rng) {
  Eigen::VectorXd q(d * d);
  double sum = 0;
  for (int i = 1; i < d * d; ++i) {
    q[i] = -std::log(std::max(uniform01(rng), 1e-300));
    sum += q[i];
  }
  for (int i = 1; i < d * d; ++i) q[i] *= eps / sum;
  q[0] = 1.0 - eps;
  return PauliChannel(d, std::move(q));
}

/// Exact sequence average by direct summation over all |G|^m words; the
/// brute-force counterpart of the transfer recursion.
inline double direct_average_fidelity(int m, const NoiseModel &noise,
                                      const SpamSpec &spam) {
  const auto &grp = CliffordGroup::get(noise.n());
  const size_t gs = grp.size();
  const int d = noise.dim();
  std::vector<Mat> step(gs);
  for (size_t i = 0; i < gs; ++i)
    step[i] = noise.channel(i, 1).mat * to_superoperator(grp[i]).mat;

  const CVec rho_vec = vec(spam.rho.rho);
  const CVec effect_vec = vec(spam.effect);
  double total = 0;

  // depth-first over words, carrying the running product and composite
  std::function<void(int, const CVec &, const CliffordElement &)> walk =
      [&](int depth, const CVec &state, const CliffordElement &acc) {
        if (depth == m) {
          size_t inv = grp.index_of(inverse(acc));
          CVec closed = step[inv] * state;
          total += (effect_vec.adjoint() * closed)(0, 0).real();
          return;
        }
        for (size_t i = 0; i < gs; ++i)
          walk(depth + 1, CVec(step[i] * state), compose(grp[i], acc));
      };
  walk(0, rho_vec, CliffordElement::identity(noise.n()));
  return total / std::pow(static_cast<double>(gs), m);
}

/// Weak gate-dependent single-qubit ensemble: per-element coherent
/// over-rotation about a random axis composed with a slightly varying
/// depolarizing channel. rot_scale bounds |angle|, dep_spread bounds 1-p.
inline NoiseModel random_weak_gate_dependent_noise(double rot_scale,
                                                   double dep_spread,
                                                   uint64_t seed) {
  const auto &grp = CliffordGroup::get(1);
  auto rng = derive_rng(seed, 0xabcdef);
  std::vector<Superoperator> table;
  table.reserve(grp.size());
  for (size_t i = 0; i < grp.size(); ++i) {
    double angle = rot_scale * (2 * uniform01(rng) - 1);
    int axis = static_cast<int>(uniform_below(rng, 3));
    double p = 1.0 - dep_spread * uniform01(rng);
    table.push_back(Superoperator(
        2, single_qubit_rotation(1, 0, axis, angle).mat *
               depolarizing(p, 2).mat));
  }
  return NoiseModel::gate_dependent(1, std::move(table));
}

}  // namespace rblab::testsupport

#endif  // RBLAB_TESTS_SUPPORT_HPP_
