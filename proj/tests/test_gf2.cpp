#include <catch2/catch.hpp>

#include <map>
#include <random>

#include "rblab/clifford.hpp"
#include "rblab/gf2.hpp"

using namespace rblab;

TEST_CASE("BitMatrix product and transpose", "[gf2]") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    int r = 1 + static_cast<int>(rng() % 6);
    int k = 1 + static_cast<int>(rng() % 6);
    int c = 1 + static_cast<int>(rng() % 6);
    BitMatrix a(r, k), b(k, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < k; ++j) a.set(i, j, rng() & 1);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < c; ++j) b.set(i, j, rng() & 1);
    BitMatrix ab = a * b;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        bool naive = false;
        for (int t = 0; t < k; ++t) naive ^= a.get(i, t) && b.get(t, j);
        REQUIRE(ab.get(i, j) == naive);
      }
    REQUIRE(a.transposed().transposed() == a);
  }
}

TEST_CASE("gf2 rank", "[gf2]") {
  REQUIRE(gf2_rank(BitMatrix::identity(5)) == 5);
  BitMatrix s(2, 2);
  s.set(0, 0, true);
  s.set(0, 1, true);
  s.set(1, 0, true);
  s.set(1, 1, true);
  REQUIRE(gf2_rank(s) == 1);
}

TEST_CASE("random solutions satisfy the system and cover the space", "[gf2]") {
  std::mt19937_64 rng(7);
  // x0 + x1 + x2 = 1 over 3 unknowns: 4 solutions
  BitMatrix a(1, 3);
  a.set(0, 0, true);
  a.set(0, 1, true);
  a.set(0, 2, true);
  BitVec b(1);
  b.set(0, true);
  std::map<uint64_t, int> seen;
  for (int t = 0; t < 4000; ++t) {
    auto x = gf2_random_solution(a, b, rng);
    REQUIRE(x.has_value());
    bool lhs = x->get(0) ^ x->get(1) ^ x->get(2);
    REQUIRE(lhs == true);
    seen[x->low_word()]++;
  }
  REQUIRE(seen.size() == 4);
  for (auto &[k, c] : seen) REQUIRE(c > 800);  // ~1000 each

  // inconsistent system
  BitMatrix a2(2, 2);
  a2.set(0, 0, true);
  a2.set(1, 0, true);
  BitVec b2(2);
  b2.set(0, true);
  REQUIRE_FALSE(gf2_random_solution(a2, b2, rng).has_value());
}

TEST_CASE("symplectic form and checks", "[gf2]") {
  for (int n = 1; n <= 4; ++n) {
    BitMatrix w = symplectic_form(n);
    REQUIRE(w * w == BitMatrix::identity(2 * n));
    REQUIRE(is_symplectic(BitMatrix::identity(2 * n), n));
  }

  // n=1 swap (Hadamard action X <-> Z) preserves the form
  BitMatrix swap(2, 2);
  swap.set(0, 1, true);
  swap.set(1, 0, true);
  REQUIRE(is_symplectic(swap, 1));

  // singular matrices are not symplectic
  BitMatrix ones(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ones.set(i, j, true);
  REQUIRE_FALSE(is_symplectic(ones, 1));

  REQUIRE_THROWS_AS(is_symplectic(BitMatrix(3, 3), 1), shape_error);
}

TEST_CASE("symplectic group enumeration matches the closed-form order",
          "[gf2]") {
  REQUIRE(enumerate_symplectic(1).size() == 6);
  REQUIRE(enumerate_symplectic(2).size() == 720);
  REQUIRE(symplectic_group_order(1) == 6);
  REQUIRE(symplectic_group_order(2) == 720);
  REQUIRE(clifford_group_order(1) == 24);
  REQUIRE(clifford_group_order(2) == 11520);
}
