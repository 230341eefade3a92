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

#ifndef RBLAB_PAULI_HPP_
#define RBLAB_PAULI_HPP_

#include <cstdint>
#include <string>

#include "rblab/errors.hpp"
#include "rblab/gf2.hpp"

namespace rblab {

/// n-qubit Pauli operator P = i^phase * X^x Z^z with the phase exponent
/// tracked exactly mod 4. X^x means the product of X_j over set bits of x,
/// ordered by qubit index; likewise for Z^z.
struct PauliOp {
  int n = 0;
  BitVec x, z;
  uint8_t phase = 0;  // exponent of i, mod 4

  PauliOp() = default;
  explicit PauliOp(int n_) : n(n_), x(n_), z(n_) {}

  static PauliOp identity(int n) { return PauliOp(n); }

  static PauliOp single_x(int n, int q) {
    PauliOp p(n);
    p.x.set(q, true);
    return p;
  }
  static PauliOp single_z(int n, int q) {
    PauliOp p(n);
    p.z.set(q, true);
    return p;
  }
  static PauliOp single_y(int n, int q) {
    PauliOp p(n);
    p.x.set(q, true);
    p.z.set(q, true);
    p.phase = 1;  // Y = i X Z
    return p;
  }

  bool operator==(const PauliOp &o) const {
    return n == o.n && x == o.x && z == o.z && phase == o.phase;
  }
};

/// Product a*b with exact phase: moving Z^z past X^x' picks up
/// (-1)^{|z & x'|}.
inline PauliOp mul(const PauliOp &a, const PauliOp &b) {
  if (a.n != b.n) throw shape_error("PauliOp product: qubit count mismatch");
  PauliOp r(a.n);
  r.x = a.x;
  r.x.xor_with(b.x);
  r.z = a.z;
  r.z.xor_with(b.z);
  int swaps = BitVec::overlap(a.z, b.x);
  r.phase = static_cast<uint8_t>((a.phase + b.phase + 2 * (swaps & 1)) & 3);
  return r;
}

/// The Hermitian Pauli with support (x, z): W = i^{|x & z|} X^x Z^z.
/// Each overlapping position is a Y, and Y = i X Z.
inline PauliOp hermitian_pauli(int n, const BitVec &x, const BitVec &z) {
  PauliOp p(n);
  p.x = x;
  p.z = z;
  p.phase = static_cast<uint8_t>(BitVec::overlap(x, z) & 3);
  return p;
}

/// Splits P into sign * W(x,z) with W Hermitian. Returns 0/1 for +/-.
/// Throws if the phase is imaginary relative to the Hermitian form
/// (cannot happen for conjugation images of Hermitian Paulis).
inline int sign_vs_hermitian(const PauliOp &p) {
  int t = BitVec::overlap(p.x, p.z) & 3;
  int rel = (static_cast<int>(p.phase) - t) & 3;
  if (rel & 1) throw contract_error("PauliOp has non-real Hermitian sign");
  return rel >> 1;
}

/// True iff the two Paulis commute (symplectic product vanishes).
inline bool commutes(const PauliOp &a, const PauliOp &b) {
  return ((BitVec::overlap(a.x, b.z) + BitVec::overlap(a.z, b.x)) & 1) == 0;
}

/// Renders with Hermitian letters, so the printed sign is relative to
/// the I/X/Y/Z convention (Y absorbs one factor of i).
inline std::string to_string(const PauliOp &p) {
  static const char *phases[] = {"+", "+i", "-", "-i"};
  int t = BitVec::overlap(p.x, p.z) & 3;
  std::string s = phases[(static_cast<int>(p.phase) - t) & 3];
  for (int q = 0; q < p.n; ++q) {
    bool xb = p.x.get(q), zb = p.z.get(q);
    s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return s;
}

}  // namespace rblab

#endif  // RBLAB_PAULI_HPP_
