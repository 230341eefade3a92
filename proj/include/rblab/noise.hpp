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

#ifndef RBLAB_NOISE_HPP_
#define RBLAB_NOISE_HPP_

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "rblab/channels.hpp"

namespace rblab {

/// State preparation and measurement description: an imperfect input
/// state rho_psi and the POVM element E_psi of the survival measurement.
struct SpamSpec {
  DensityMatrix rho;
  Mat effect;

  static SpamSpec ideal(int n) {
    const int d = 1 << n;
    SpamSpec s;
    s.rho = DensityMatrix::basis_state(d, 0);
    s.effect = s.rho.rho;
    return s;
  }

  int dim() const { return rho.d; }

  void validate() const {
    validate_density(rho);
    validate_effect(effect);
    if (effect.rows() != rho.d)
      throw shape_error("SpamSpec: state/effect dimension mismatch");
  }
};

enum class NoiseMode {
  GateIndependent,
  GateDependent,
  GateTimeDependent,
  GeneratorDependent,  // n >= 3 fallback: noise attached to generator pulses
};

/// Assignment of an error channel Lambda_{i,j} to each (Clifford index i,
/// time step j >= 1). Gate-dependent indexing runs over the enumerated
/// group (n <= 2); for n = 3 the generator-dependent mode composes
/// per-gate-kind channels along the decomposition of each element instead.
/// Every stored channel is CPTP-checked at construction.
class NoiseModel {
public:
  static NoiseModel gate_independent(int n, Superoperator lambda) {
    NoiseModel m(n, NoiseMode::GateIndependent);
    m.check(lambda);
    m.steps_.push_back({std::move(lambda)});
    return m;
  }

  /// One channel per enumerated Clifford element (n <= 2).
  static NoiseModel gate_dependent(int n, std::vector<Superoperator> table) {
    NoiseModel m(n, NoiseMode::GateDependent);
    if (table.size() != clifford_group_order(n))
      throw contract_error("NoiseModel: table must cover the enumerated group");
    for (const auto &s : table) m.check(s);
    m.steps_.push_back(std::move(table));
    return m;
  }

  /// Per time step, one channel per enumerated element; steps beyond the
  /// given list reuse the final entry.
  static NoiseModel gate_time_dependent(
      int n, std::vector<std::vector<Superoperator>> steps) {
    NoiseModel m(n, NoiseMode::GateTimeDependent);
    if (steps.empty()) throw contract_error("NoiseModel: no time steps");
    for (auto &tab : steps) {
      if (tab.size() != clifford_group_order(n))
        throw contract_error("NoiseModel: table must cover the enumerated group");
      for (const auto &s : tab) m.check(s);
    }
    m.steps_ = std::move(steps);
    return m;
  }

  /// Channels attached to generator pulses; the noise of an element is the
  /// composition of its generators' noise.
  static NoiseModel generator_dependent(int n, Superoperator h, Superoperator s,
                                        Superoperator cnot, Superoperator pauli) {
    NoiseModel m(n, NoiseMode::GeneratorDependent);
    m.check(h);
    m.check(s);
    m.check(cnot);
    m.check(pauli);
    m.steps_.push_back({std::move(h), std::move(s), std::move(cnot),
                        std::move(pauli)});
    return m;
  }

  // Convenience constructors -------------------------------------------------

  static NoiseModel depolarizing_noise(int n, double p) {
    return gate_independent(n, depolarizing(p, 1 << n));
  }

  static NoiseModel amplitude_damping_noise(double gamma) {
    return gate_independent(1, amplitude_damping(gamma));
  }

  /// The benchmark-defeating case: each element's noise is exactly the
  /// inverse gate, so every sequence composes to the identity.
  static NoiseModel inverse_gate_pathology(int n) {
    const auto &grp = CliffordGroup::get(n);
    std::vector<Superoperator> table;
    table.reserve(grp.size());
    for (const auto &g : grp.elements())
      table.push_back(to_superoperator(inverse(g)));
    return gate_dependent(n, std::move(table));
  }

  /// Per-element coherent over-rotation about the given axis on qubit 0.
  static NoiseModel gate_dependent_unitary(int n, const std::vector<double> &angles,
                                           int axis = 2) {
    const auto &grp = CliffordGroup::get(n);
    if (angles.size() != grp.size())
      throw contract_error("gate_dependent_unitary: one angle per element");
    std::vector<Superoperator> table;
    table.reserve(grp.size());
    for (double a : angles)
      table.push_back(single_qubit_rotation(n, 0, axis, a));
    return gate_dependent(n, std::move(table));
  }

  /// Physical over-rotation: each single-qubit element runs a fraction
  /// delta too long, so its error is the element's own Bloch rotation
  /// scaled to delta times the rotation angle. Strongly gate-correlated.
  static NoiseModel over_rotation(double delta) {
    const auto &grp = CliffordGroup::get(1);
    std::vector<Superoperator> table;
    table.reserve(grp.size());
    for (const auto &g : grp.elements()) {
      Eigen::Matrix3d r =
          pauli_transfer(to_superoperator(g)).block(1, 1, 3, 3);
      double cosang = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
      double angle = std::acos(cosang);
      Eigen::Vector3d axis;
      // group rotation angles are only {0, pi/2, 2pi/3, pi}: generous
      // windows keep acos roundoff out of the axis extraction
      if (angle < 1e-6) {
        table.push_back(Superoperator::identity(2));
        continue;
      }
      if (angle > M_PI - 1e-6) {
        // R = 2 n n^T - I: take the dominant column of R + I
        Eigen::Matrix3d m = r + Eigen::Matrix3d::Identity();
        int best = 0;
        for (int c = 1; c < 3; ++c)
          if (m.col(c).norm() > m.col(best).norm()) best = c;
        axis = m.col(best).normalized();
      } else {
        axis << r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1);
        axis /= 2.0 * std::sin(angle);
      }
      double th = delta * angle;
      Mat u = std::cos(th / 2) * detail::sigma(0) -
              cxd(0, 1) * std::sin(th / 2) *
                  (axis[0] * detail::sigma(1) + axis[1] * detail::sigma(2) +
                   axis[2] * detail::sigma(3));
      table.push_back(unitary_channel(u));
    }
    return gate_dependent(1, std::move(table));
  }

  int n() const { return n_; }
  int dim() const { return 1 << n_; }
  NoiseMode mode() const { return mode_; }
  bool time_dependent() const { return mode_ == NoiseMode::GateTimeDependent; }
  bool gate_dependent() const { return mode_ != NoiseMode::GateIndependent; }
  size_t time_step_count() const { return steps_.size(); }

  /// Lambda_{i,j} for an enumerated-group index (modes with index tables).
  const Superoperator &channel(size_t index, int time_step) const {
    if (mode_ == NoiseMode::GeneratorDependent)
      throw contract_error("NoiseModel: generator mode has no index table");
    const auto &tab = table_at(time_step);
    return mode_ == NoiseMode::GateIndependent ? tab[0] : tab.at(index);
  }

  /// Lambda for a concrete element (any mode). Gate-dependent modes look
  /// the element up in the enumerated group; the generator mode composes
  /// pulse noise along decompose(g) and strips the ideal action.
  Superoperator channel_for(const CliffordElement &g, int time_step) const {
    switch (mode_) {
      case NoiseMode::GateIndependent:
        return steps_[0][0];
      case NoiseMode::GateDependent:
      case NoiseMode::GateTimeDependent:
        return table_at(time_step).at(CliffordGroup::get(n_).index_of(g));
      case NoiseMode::GeneratorDependent: {
        const auto &pulse = steps_[0];
        Superoperator eff = Superoperator::identity(dim());
        for (const Gate &gt : decompose(g)) {
          const Superoperator *lam = nullptr;
          switch (gt.kind) {
            case GateKind::H: lam = &pulse[0]; break;
            case GateKind::S: lam = &pulse[1]; break;
            case GateKind::CNOT: lam = &pulse[2]; break;
            default: lam = &pulse[3]; break;
          }
          eff = compose(*lam, compose(to_superoperator(gate_element(n_, gt)), eff));
        }
        return compose(eff, Superoperator(dim(),
                                          to_superoperator(g).mat.adjoint()));
      }
    }
    throw contract_error("NoiseModel: unknown mode");
  }

private:
  NoiseModel(int n, NoiseMode mode) : n_(n), mode_(mode) {
    if (n < 1) throw contract_error("NoiseModel: n >= 1");
  }

  const std::vector<Superoperator> &table_at(int time_step) const {
    if (time_step < 1) throw contract_error("NoiseModel: time steps start at 1");
    size_t idx = std::min<size_t>(time_step - 1, steps_.size() - 1);
    return steps_[idx];
  }

  void check(const Superoperator &s) const {
    if (s.d != dim()) throw shape_error("NoiseModel: channel dimension mismatch");
    if (!is_cptp(s, 1e-8)) throw contract_error("NoiseModel: channel is not CPTP");
  }

  int n_;
  NoiseMode mode_;
  std::vector<std::vector<Superoperator>> steps_;
};

}  // namespace rblab

#endif  // RBLAB_NOISE_HPP_
