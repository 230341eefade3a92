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

#ifndef RBLAB_GF2_HPP_
#define RBLAB_GF2_HPP_

#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "rblab/errors.hpp"

namespace rblab {

/// Bit vector over GF(2), packed into 64-bit words.
class BitVec {
public:
  BitVec() = default;
  explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }

  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool v) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= mask;
    else
      w_[i >> 6] &= ~mask;
  }
  void flip(int i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

  void xor_with(const BitVec &o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
  }

  bool is_zero() const {
    for (uint64_t w : w_)
      if (w) return false;
    return true;
  }

  int popcount() const {
    int c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  /// Parity of the AND of two vectors (inner product over GF(2)).
  static bool dot(const BitVec &a, const BitVec &b) {
    uint64_t acc = 0;
    for (size_t k = 0; k < a.w_.size(); ++k) acc ^= a.w_[k] & b.w_[k];
    return std::popcount(acc) & 1;
  }

  /// Number of positions set in both vectors.
  static int overlap(const BitVec &a, const BitVec &b) {
    int c = 0;
    for (size_t k = 0; k < a.w_.size(); ++k)
      c += std::popcount(a.w_[k] & b.w_[k]);
    return c;
  }

  bool operator==(const BitVec &o) const {
    return n_ == o.n_ && w_ == o.w_;
  }

  /// Packs the first 64 bits into a word (callers guarantee n <= 64).
  uint64_t low_word() const { return w_.empty() ? 0 : w_[0]; }

private:
  int n_ = 0;
  std::vector<uint64_t> w_;
};

/// Dense bit matrix over GF(2), row-major packed rows.
/// Rank/solve helpers never mutate their inputs.
class BitMatrix {
public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), row_(rows, BitVec(cols)) {}

  static BitMatrix identity(int n) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool get(int r, int c) const { return row_[r].get(c); }
  void set(int r, int c, bool v) { row_[r].set(c, v); }

  const BitVec &row(int r) const { return row_[r]; }
  BitVec &row(int r) { return row_[r]; }

  BitVec col(int c) const {
    BitVec v(rows_);
    for (int r = 0; r < rows_; ++r)
      if (get(r, c)) v.set(r, true);
    return v;
  }
  void set_col(int c, const BitVec &v) {
    for (int r = 0; r < rows_; ++r) set(r, c, v.get(r));
  }

  BitMatrix transposed() const {
    BitMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if (get(r, c)) t.set(c, r, true);
    return t;
  }

  /// Matrix product mod 2.
  friend BitMatrix operator*(const BitMatrix &a, const BitMatrix &b) {
    if (a.cols_ != b.rows_) throw shape_error("BitMatrix product shape mismatch");
    BitMatrix bt = b.transposed();
    BitMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j)
        if (BitVec::dot(a.row_[i], bt.row_[j])) c.set(i, j, true);
    return c;
  }

  /// Matrix-vector product mod 2.
  BitVec mul(const BitVec &v) const {
    if (v.size() != cols_) throw shape_error("BitMatrix::mul shape mismatch");
    BitVec out(rows_);
    for (int r = 0; r < rows_; ++r)
      if (BitVec::dot(row_[r], v)) out.set(r, true);
    return out;
  }

  bool operator==(const BitMatrix &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && row_ == o.row_;
  }

  /// Row-major bit packing of the whole matrix (fits in a word for
  /// matrices up to 8x8); used as an enumeration key.
  uint64_t packed_key() const {
    uint64_t key = 0;
    int bit = 0;
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c, ++bit)
        if (get(r, c)) key |= uint64_t{1} << bit;
    return key;
  }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<BitVec> row_;
};

inline int gf2_rank(BitMatrix m) {
  int rank = 0;
  for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
    int pivot = -1;
    for (int r = rank; r < m.rows(); ++r)
      if (m.get(r, c)) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(m.row(rank), m.row(pivot));
    for (int r = 0; r < m.rows(); ++r)
      if (r != rank && m.get(r, c)) m.row(r).xor_with(m.row(rank));
    ++rank;
  }
  return rank;
}

/// Draws a uniformly random solution of A x = b over GF(2), or nullopt if
/// the system is inconsistent. Free variables are drawn as independent
/// fair bits, which makes the returned solution exactly uniform over the
/// affine solution set.
inline std::optional<BitVec> gf2_random_solution(const BitMatrix &a_in,
                                                 const BitVec &b_in,
                                                 std::mt19937_64 &rng) {
  BitMatrix a = a_in;
  BitVec b = b_in;
  const int nr = a.rows(), nc = a.cols();
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < nc && rank < nr; ++c) {
    int pivot = -1;
    for (int r = rank; r < nr; ++r)
      if (a.get(r, c)) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(a.row(rank), a.row(pivot));
    {
      bool t = b.get(rank); b.set(rank, b.get(pivot)); b.set(pivot, t);
    }
    for (int r = 0; r < nr; ++r)
      if (r != rank && a.get(r, c)) {
        a.row(r).xor_with(a.row(rank));
        if (b.get(rank)) b.flip(r);
      }
    pivot_col.push_back(c);
    ++rank;
  }
  for (int r = rank; r < nr; ++r)
    if (b.get(r)) return std::nullopt;

  BitVec x(nc);
  std::vector<bool> is_pivot(nc, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int c = 0; c < nc; ++c)
    if (!is_pivot[c]) x.set(c, rng() & 1);
  for (int r = 0; r < rank; ++r) {
    bool v = b.get(r);
    for (int c = pivot_col[r] + 1; c < nc; ++c)
      if (a.get(r, c) && x.get(c)) v = !v;
    x.set(pivot_col[r], v);
  }
  return x;
}

/// The symplectic form Omega = [[0, I],[I, 0]] on 2n bits.
inline BitMatrix symplectic_form(int n) {
  BitMatrix w(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    w.set(i, n + i, true);
    w.set(n + i, i, true);
  }
  return w;
}

/// Symplectic inner product of two 2n-bit vectors, <u,v> = u_x.v_z + u_z.v_x.
inline bool symplectic_product(const BitVec &u, const BitVec &v) {
  const int n2 = u.size();
  const int n = n2 / 2;
  bool acc = false;
  for (int i = 0; i < n; ++i) {
    acc ^= u.get(i) && v.get(n + i);
    acc ^= u.get(n + i) && v.get(i);
  }
  return acc;
}

/// True iff C^T Omega C = Omega (mod 2) for a 2n x 2n matrix.
inline bool is_symplectic(const BitMatrix &c, int n) {
  if (c.rows() != 2 * n || c.cols() != 2 * n)
    throw shape_error("is_symplectic: matrix is not 2n x 2n");
  const BitMatrix omega = symplectic_form(n);
  return c.transposed() * omega * c == omega;
}

}  // namespace rblab

#endif  // RBLAB_GF2_HPP_
