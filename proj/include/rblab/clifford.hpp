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

#ifndef RBLAB_CLIFFORD_HPP_
#define RBLAB_CLIFFORD_HPP_

#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "rblab/errors.hpp"
#include "rblab/gf2.hpp"
#include "rblab/pauli.hpp"

namespace rblab {

/// An n-qubit Clifford element up to global phase, in the symplectic
/// representation: a 2n x 2n GF(2) matrix C plus a 2n-bit sign vector h.
///
/// Column convention (fixed): columns 0..n-1 are the images of X_1..X_n,
/// columns n..2n-1 are the images of Z_1..Z_n. A column encodes a Pauli as
/// a 2n-bit vector with x-part in rows 0..n-1 and z-part in rows n..2n-1.
/// The image of generator j is (-1)^{h_j} times the Hermitian Pauli with
/// that support.
struct CliffordElement {
  int n = 0;
  BitMatrix c;
  BitVec h;

  CliffordElement() = default;
  explicit CliffordElement(int n_)
      : n(n_), c(BitMatrix::identity(2 * n_)), h(2 * n_) {}

  static CliffordElement identity(int n) { return CliffordElement(n); }

  bool operator==(const CliffordElement &o) const {
    return n == o.n && c == o.c && h == o.h;
  }

  bool is_identity() const {
    return c == BitMatrix::identity(2 * n) && h.is_zero();
  }

  uint64_t key() const {
    // fits for n <= 2 (16 matrix bits + 4 sign bits)
    return c.packed_key() | (h.low_word() << 48);
  }
};

inline bool is_valid(const CliffordElement &g) {
  return is_symplectic(g.c, g.n);
}

/// Image of generator j (X_j for j < n, Z_{j-n} otherwise) as a signed
/// Hermitian Pauli.
inline PauliOp generator_image(const CliffordElement &g, int j) {
  BitVec col = g.c.col(j);
  BitVec x(g.n), z(g.n);
  for (int q = 0; q < g.n; ++q) {
    if (col.get(q)) x.set(q, true);
    if (col.get(g.n + q)) z.set(q, true);
  }
  PauliOp w = hermitian_pauli(g.n, x, z);
  if (g.h.get(j)) w.phase = static_cast<uint8_t>((w.phase + 2) & 3);
  return w;
}

/// g P g^dag with the phase tracked exactly mod 4.
inline PauliOp conjugate_pauli(const CliffordElement &g, const PauliOp &p) {
  if (g.n != p.n) throw shape_error("conjugate_pauli: qubit count mismatch");
  PauliOp r = PauliOp::identity(g.n);
  r.phase = p.phase;
  for (int q = 0; q < g.n; ++q)
    if (p.x.get(q)) r = mul(r, generator_image(g, q));
  for (int q = 0; q < g.n; ++q)
    if (p.z.get(q)) r = mul(r, generator_image(g, g.n + q));
  return r;
}

/// Composition "apply b, then a". Sign vector is recomputed from exact
/// Pauli phase arithmetic, so intermediate products cannot drop signs.
inline CliffordElement compose(const CliffordElement &a,
                               const CliffordElement &b) {
  if (a.n != b.n) throw shape_error("compose: qubit count mismatch");
  CliffordElement r(a.n);
  r.c = a.c * b.c;
  for (int j = 0; j < 2 * a.n; ++j) {
    PauliOp img = conjugate_pauli(a, generator_image(b, j));
    r.h.set(j, sign_vs_hermitian(img));
  }
  return r;
}

/// Group inverse. The symplectic part inverts as Omega C^T Omega; the sign
/// of generator j follows from pushing the candidate preimage through g.
inline CliffordElement inverse(const CliffordElement &g) {
  const int n = g.n;
  const BitMatrix omega = symplectic_form(n);
  CliffordElement r(n);
  r.c = omega * g.c.transposed() * omega;
  for (int j = 0; j < 2 * n; ++j) {
    BitVec col = r.c.col(j);
    BitVec x(n), z(n);
    for (int q = 0; q < n; ++q) {
      if (col.get(q)) x.set(q, true);
      if (col.get(n + q)) z.set(q, true);
    }
    PauliOp img = conjugate_pauli(g, hermitian_pauli(n, x, z));
    r.h.set(j, sign_vs_hermitian(img));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

enum class GateKind { X, Y, Z, H, S, CNOT };

struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = 0;  // CNOT target
};

using GeneratorSeq = std::vector<Gate>;

inline CliffordElement pauli_element(int n, const BitVec &px,
                                     const BitVec &pz) {
  CliffordElement g(n);
  for (int q = 0; q < n; ++q) {
    g.h.set(q, pz.get(q));       // X_q anticommutes with Z components
    g.h.set(n + q, px.get(q));   // Z_q anticommutes with X components
  }
  return g;
}

inline CliffordElement gate_element(int n, const Gate &gt) {
  if (gt.q0 < 0 || gt.q0 >= n || (gt.kind == GateKind::CNOT &&
                                  (gt.q1 < 0 || gt.q1 >= n || gt.q1 == gt.q0)))
    throw contract_error("gate_element: qubit index out of range");
  CliffordElement g(n);
  const int q = gt.q0;
  switch (gt.kind) {
    case GateKind::X: {
      BitVec px(n), pz(n);
      px.set(q, true);
      return pauli_element(n, px, pz);
    }
    case GateKind::Y: {
      BitVec px(n), pz(n);
      px.set(q, true);
      pz.set(q, true);
      return pauli_element(n, px, pz);
    }
    case GateKind::Z: {
      BitVec px(n), pz(n);
      pz.set(q, true);
      return pauli_element(n, px, pz);
    }
    case GateKind::H: {
      // X_q -> Z_q, Z_q -> X_q
      BitVec cx(2 * n), cz(2 * n);
      cx.set(n + q, true);
      cz.set(q, true);
      g.c.set_col(q, cx);
      g.c.set_col(n + q, cz);
      return g;
    }
    case GateKind::S: {
      // X_q -> Y_q, Z_q -> Z_q
      BitVec cx(2 * n);
      cx.set(q, true);
      cx.set(n + q, true);
      g.c.set_col(q, cx);
      return g;
    }
    case GateKind::CNOT: {
      const int t = gt.q1;
      // X_c -> X_c X_t, Z_t -> Z_c Z_t
      BitVec cc = g.c.col(q);
      cc.set(t, true);
      g.c.set_col(q, cc);
      BitVec ct = g.c.col(n + t);
      ct.set(n + q, true);
      g.c.set_col(n + t, ct);
      return g;
    }
  }
  throw contract_error("gate_element: unknown gate");
}

/// Applies the sequence in circuit order (front gate acts first).
inline CliffordElement recompose(int n, const GeneratorSeq &seq) {
  CliffordElement acc = CliffordElement::identity(n);
  for (const Gate &gt : seq) acc = compose(gate_element(n, gt), acc);
  return acc;
}

namespace detail {

inline void emit_inverse(const Gate &gt, GeneratorSeq &out) {
  switch (gt.kind) {
    case GateKind::S:  // S^dag = S S S
      out.push_back(gt);
      out.push_back(gt);
      out.push_back(gt);
      break;
    default:  // H, CNOT, Paulis are involutions
      out.push_back(gt);
      break;
  }
}

}  // namespace detail

/// Decomposes g into a leading layer of single-qubit Paulis followed by
/// {H, S, CNOT} gates whose circuit-order composition reproduces g exactly,
/// sign vector included. The length is O(n^2) gates.
///
/// Strategy: left-multiply generators onto g until the symplectic part is
/// the identity, one qubit pair per round; the residual element then has
/// trivial symplectic part, i.e. it is a Pauli, which becomes the leading
/// layer of the inverted gate list.
inline GeneratorSeq decompose(const CliffordElement &g) {
  const int n = g.n;
  CliffordElement cur = g;
  GeneratorSeq applied;
  auto app = [&](GateKind k, int a, int b = 0) {
    Gate gt{k, a, b};
    cur = compose(gate_element(n, gt), cur);
    applied.push_back(gt);
  };
  auto image = [&](int j) { return conjugate_pauli(cur, j < n
                                                            ? PauliOp::single_x(n, j)
                                                            : PauliOp::single_z(n, j - n)); };

  for (int i = 0; i < n; ++i) {
    // Round A: send the image of X_i to (+/-) X_i.
    PauliOp p = image(i);
    bool have_x = false;
    for (int j = i; j < n && !have_x; ++j) have_x = p.x.get(j);
    if (!have_x) {
      for (int j = i; j < n; ++j)
        if (p.z.get(j)) {
          app(GateKind::H, j);
          break;
        }
      p = image(i);
    }
    int j0 = -1;
    for (int j = i; j < n; ++j)
      if (p.x.get(j)) {
        j0 = j;
        break;
      }
    if (j0 != i) {
      app(GateKind::CNOT, i, j0);
      app(GateKind::CNOT, j0, i);
      app(GateKind::CNOT, i, j0);
      p = image(i);
    }
    for (int j = i + 1; j < n; ++j)
      if (p.x.get(j)) app(GateKind::CNOT, i, j);
    p = image(i);
    for (int j = i + 1; j < n; ++j)
      if (p.z.get(j)) {
        app(GateKind::H, j);
        app(GateKind::CNOT, i, j);
      }
    p = image(i);
    if (p.z.get(i)) app(GateKind::S, i);

    // Round B: send the image of Z_i to (+/-) Z_i while fixing X_i.
    PauliOp q = image(n + i);
    for (int j = i + 1; j < n; ++j)
      if (q.x.get(j)) {
        if (q.z.get(j)) app(GateKind::S, j);
        app(GateKind::H, j);
      }
    q = image(n + i);
    for (int j = i + 1; j < n; ++j)
      if (q.z.get(j)) app(GateKind::CNOT, j, i);
    q = image(n + i);
    if (q.x.get(i)) {
      app(GateKind::H, i);
      app(GateKind::S, i);
      app(GateKind::H, i);
    }
  }

  if (!(cur.c == BitMatrix::identity(2 * n)))
    throw contract_error("decompose: reduction failed (input not symplectic?)");

  GeneratorSeq out;
  for (int qb = 0; qb < n; ++qb) {
    bool zc = cur.h.get(qb);      // X_q picked up a sign -> Z component
    bool xc = cur.h.get(n + qb);  // Z_q picked up a sign -> X component
    if (xc && zc)
      out.push_back({GateKind::Y, qb, 0});
    else if (xc)
      out.push_back({GateKind::X, qb, 0});
    else if (zc)
      out.push_back({GateKind::Z, qb, 0});
  }
  for (auto it = applied.rbegin(); it != applied.rend(); ++it)
    detail::emit_inverse(*it, out);
  return out;
}

// ---------------------------------------------------------------------------
// Uniform sampling
// ---------------------------------------------------------------------------

namespace detail {

/// Row vector r with r . v = <col, v> (symplectic product against col).
inline BitVec omega_row(const BitVec &col) {
  const int n = col.size() / 2;
  BitVec r(2 * n);
  for (int q = 0; q < n; ++q) {
    if (col.get(n + q)) r.set(q, true);
    if (col.get(q)) r.set(n + q, true);
  }
  return r;
}

}  // namespace detail

/// Uniformly random Clifford element, built column pair by column pair.
/// Each X image is a uniform nonzero solution of the commutation
/// constraints with all previously fixed columns; each Z image is a
/// uniform solution of the same constraints plus the anticommutation with
/// its partner. Sign bits are independent fair coins. The choice counts at
/// every step are prefix-independent, so the result is exactly uniform.
/// Classical cost O(n^4).
inline CliffordElement random_clifford(int n, std::mt19937_64 &rng) {
  if (n < 1) throw contract_error("random_clifford: n must be >= 1");
  CliffordElement g(n);
  std::vector<BitVec> rows;
  rows.reserve(2 * n);
  for (int i = 0; i < n; ++i) {
    BitMatrix a(static_cast<int>(rows.size()), 2 * n);
    for (size_t r = 0; r < rows.size(); ++r) a.row(static_cast<int>(r)) = rows[r];
    BitVec zero_rhs(static_cast<int>(rows.size()));
    BitVec u;
    do {
      u = *gf2_random_solution(a, zero_rhs, rng);
    } while (u.is_zero());

    BitMatrix a2(static_cast<int>(rows.size()) + 1, 2 * n);
    for (size_t r = 0; r < rows.size(); ++r) a2.row(static_cast<int>(r)) = rows[r];
    a2.row(static_cast<int>(rows.size())) = detail::omega_row(u);
    BitVec rhs(static_cast<int>(rows.size()) + 1);
    rhs.set(static_cast<int>(rows.size()), true);
    BitVec v = *gf2_random_solution(a2, rhs, rng);

    g.c.set_col(i, u);
    g.c.set_col(n + i, v);
    rows.push_back(detail::omega_row(u));
    rows.push_back(detail::omega_row(v));
  }
  for (int j = 0; j < 2 * n; ++j) g.h.set(j, rng() & 1);
  return g;
}

// ---------------------------------------------------------------------------
// Enumeration (desk scale, n <= 2)
// ---------------------------------------------------------------------------

/// |Sp(2n,2)| = 2^{n^2} prod_{j=1..n} (4^j - 1).
inline uint64_t symplectic_group_order(int n) {
  uint64_t order = uint64_t{1} << (n * n);
  uint64_t p4 = 1;
  for (int j = 1; j <= n; ++j) {
    p4 *= 4;
    order *= p4 - 1;
  }
  return order;
}

/// Number of Clifford elements mod global phase: |Sp(2n,2)| * 4^n.
inline uint64_t clifford_group_order(int n) {
  return symplectic_group_order(n) << (2 * n);
}

/// All 2n x 2n symplectic matrices, found by filtering every GF(2) matrix
/// through the symplectic condition; ordered by packed bit key.
inline std::vector<BitMatrix> enumerate_symplectic(int n) {
  if (n > 2) throw capacity_error("enumerate_symplectic: n <= 2 only");
  const int dim = 2 * n;
  const int bits = dim * dim;
  std::vector<BitMatrix> out;
  for (uint64_t key = 0; key < (uint64_t{1} << bits); ++key) {
    BitMatrix m(dim, dim);
    for (int b = 0; b < bits; ++b)
      if ((key >> b) & 1) m.set(b / dim, b % dim, true);
    if (is_symplectic(m, n)) out.push_back(m);
  }
  return out;
}

/// Fully enumerated Clifford group for n <= 2 with O(1) index lookup.
/// Element order: symplectic matrices by packed key (major), sign vector
/// as a little-endian integer (minor).
class CliffordGroup {
public:
  static const CliffordGroup &get(int n) {
    static CliffordGroup g1(1);
    static CliffordGroup g2(2);
    if (n == 1) return g1;
    if (n == 2) return g2;
    throw capacity_error("CliffordGroup enumeration requires n <= 2");
  }

  int n() const { return n_; }
  size_t size() const { return elements_.size(); }
  const std::vector<CliffordElement> &elements() const { return elements_; }
  const CliffordElement &operator[](size_t i) const { return elements_[i]; }

  size_t index_of(const CliffordElement &g) const {
    auto it = index_.find(g.key());
    if (it == index_.end())
      throw contract_error("CliffordGroup::index_of: element not in group");
    return it->second;
  }

  /// Index of the symplectic class (sign vector ignored).
  size_t symplectic_index_of(const BitMatrix &c) const {
    auto it = sp_index_.find(c.packed_key());
    if (it == sp_index_.end())
      throw contract_error("CliffordGroup: matrix is not symplectic");
    return it->second;
  }

  size_t symplectic_count() const { return sp_index_.size(); }

private:
  explicit CliffordGroup(int n) : n_(n) {
    auto sps = enumerate_symplectic(n);
    for (size_t s = 0; s < sps.size(); ++s)
      sp_index_.emplace(sps[s].packed_key(), s);
    elements_.reserve(sps.size() << (2 * n));
    for (const BitMatrix &c : sps) {
      for (uint64_t hm = 0; hm < (uint64_t{1} << (2 * n)); ++hm) {
        CliffordElement g(n);
        g.c = c;
        for (int j = 0; j < 2 * n; ++j) g.h.set(j, (hm >> j) & 1);
        index_.emplace(g.key(), elements_.size());
        elements_.push_back(std::move(g));
      }
    }
  }

  int n_;
  std::vector<CliffordElement> elements_;
  std::unordered_map<uint64_t, size_t> index_;
  std::unordered_map<uint64_t, size_t> sp_index_;
};

// ---------------------------------------------------------------------------
// Minimal-length single-qubit table
// ---------------------------------------------------------------------------

/// Minimal pulse counts for the 24 single-qubit Cliffords over the
/// physical generator set {X, Y, +/- 90-degree rotations about x and y},
/// computed by breadth-first search on the Cayley graph. The identity is
/// charged one idle slot. Returns the per-element counts in enumeration
/// order of CliffordGroup::get(1).
std::vector<int> single_qubit_min_gate_counts();

inline double average_single_qubit_gate_count() {
  auto counts = single_qubit_min_gate_counts();
  double sum = 0;
  for (int c : counts) sum += c;
  return sum / static_cast<double>(counts.size());
}

namespace detail {

inline CliffordElement axis_rotation_element(bool about_x, bool positive) {
  // +90 about x: X -> X,  Z -> -Y;   -90 about x: X -> X,  Z -> +Y
  // +90 about y: X -> -Z, Z -> X;    -90 about y: X -> Z,  Z -> -X
  CliffordElement g(1);
  BitVec cx(2), cz(2);
  if (about_x) {
    cx.set(0, true);           // X image: X
    cz.set(0, true);
    cz.set(1, true);           // Z image: Y support
    g.c.set_col(0, cx);
    g.c.set_col(1, cz);
    g.h.set(1, positive);      // sign of the Y image
  } else {
    cx.set(1, true);           // X image: Z support
    cz.set(0, true);           // Z image: X support
    g.c.set_col(0, cx);
    g.c.set_col(1, cz);
    g.h.set(0, positive);      // -Z for +90, +Z for -90
    g.h.set(1, !positive);     // +X for +90, -X for -90
  }
  return g;
}

}  // namespace detail

inline std::vector<int> single_qubit_min_gate_counts() {
  const CliffordGroup &grp = CliffordGroup::get(1);
  std::vector<CliffordElement> gens = {
      gate_element(1, {GateKind::X, 0, 0}),
      gate_element(1, {GateKind::Y, 0, 0}),
      detail::axis_rotation_element(true, true),
      detail::axis_rotation_element(true, false),
      detail::axis_rotation_element(false, true),
      detail::axis_rotation_element(false, false),
  };
  std::vector<int> dist(grp.size(), -1);
  std::deque<size_t> queue;
  size_t id = grp.index_of(CliffordElement::identity(1));
  dist[id] = 0;
  queue.push_back(id);
  while (!queue.empty()) {
    size_t cur = queue.front();
    queue.pop_front();
    for (const CliffordElement &gen : gens) {
      size_t nxt = grp.index_of(compose(gen, grp[cur]));
      if (dist[nxt] < 0) {
        dist[nxt] = dist[cur] + 1;
        queue.push_back(nxt);
      }
    }
  }
  for (int &d : dist) {
    if (d < 0) throw contract_error("single-qubit generators do not generate");
    if (d == 0) d = 1;  // idle pulse still occupies a slot
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Wire format
// ---------------------------------------------------------------------------

/// Hex encoding used by the CLI: row-major C bits then h bits, each packed
/// little-endian into hex nibbles, separated by one space.
std::string to_hex(const CliffordElement &g);
CliffordElement from_hex(int n, const std::string &line);

namespace detail {

inline std::string bits_to_hex(const std::vector<bool> &bits) {
  std::string s((bits.size() + 3) / 4, '0');
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) {
      int nib = s[i / 4] >= 'a' ? s[i / 4] - 'a' + 10 : s[i / 4] - '0';
      nib |= 1 << (i % 4);
      s[i / 4] = static_cast<char>(nib < 10 ? '0' + nib : 'a' + nib - 10);
    }
  return s;
}

inline std::vector<bool> hex_to_bits(const std::string &s, size_t nbits) {
  std::vector<bool> bits(nbits, false);
  for (size_t i = 0; i < nbits; ++i) {
    if (i / 4 >= s.size()) throw contract_error("hex string too short");
    char c = s[i / 4];
    int nib = (c >= '0' && c <= '9')   ? c - '0'
              : (c >= 'a' && c <= 'f') ? c - 'a' + 10
              : (c >= 'A' && c <= 'F') ? c - 'A' + 10
                                       : -1;
    if (nib < 0) throw contract_error("invalid hex digit");
    bits[i] = (nib >> (i % 4)) & 1;
  }
  return bits;
}

}  // namespace detail

inline std::string to_hex(const CliffordElement &g) {
  const int dim = 2 * g.n;
  std::vector<bool> cbits(static_cast<size_t>(dim) * dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) cbits[static_cast<size_t>(r) * dim + c] = g.c.get(r, c);
  std::vector<bool> hbits(dim);
  for (int j = 0; j < dim; ++j) hbits[j] = g.h.get(j);
  return detail::bits_to_hex(cbits) + " " + detail::bits_to_hex(hbits);
}

inline CliffordElement from_hex(int n, const std::string &line) {
  const int dim = 2 * n;
  auto sp = line.find(' ');
  if (sp == std::string::npos)
    throw contract_error("element line must be '<C hex> <h hex>'");
  auto cbits = detail::hex_to_bits(line.substr(0, sp), static_cast<size_t>(dim) * dim);
  auto hbits = detail::hex_to_bits(line.substr(sp + 1), dim);
  CliffordElement g(n);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      g.c.set(r, c, cbits[static_cast<size_t>(r) * dim + c]);
  for (int j = 0; j < dim; ++j) g.h.set(j, hbits[j]);
  if (!is_valid(g)) throw contract_error("decoded element is not symplectic");
  return g;
}

}  // namespace rblab

#endif  // RBLAB_CLIFFORD_HPP_
