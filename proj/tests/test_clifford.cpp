#include <catch2/catch.hpp>

#include <random>
#include <set>

#include "rblab/clifford.hpp"
#include "rblab/stats.hpp"
#include "support.hpp"

using namespace rblab;
namespace ts = rblab::testsupport;

TEST_CASE("pauli multiplication phases", "[pauli]") {
  // XZ = -ZX on the same qubit
  auto x = PauliOp::single_x(1, 0), z = PauliOp::single_z(1, 0);
  auto xz = mul(x, z), zx = mul(z, x);
  REQUIRE(xz.phase == ((zx.phase + 2) & 3));
  // Y = i X Z
  auto y = PauliOp::single_y(1, 0);
  REQUIRE(mul(x, z).x == y.x);
  REQUIRE(((xz.phase + 1) & 3) == y.phase);
  // dense cross-check on random products
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    PauliOp a(2), b(2);
    for (int q = 0; q < 2; ++q) {
      a.x.set(q, rng() & 1);
      a.z.set(q, rng() & 1);
      b.x.set(q, rng() & 1);
      b.z.set(q, rng() & 1);
    }
    a.phase = rng() & 3;
    b.phase = rng() & 3;
    Mat lhs = ts::dense_pauli(mul(a, b));
    Mat rhs = ts::dense_pauli(a) * ts::dense_pauli(b);
    REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("generator elements match their dense action", "[clifford]") {
  std::mt19937_64 rng(11);
  for (int n : {1, 2, 3}) {
    std::vector<Gate> gates = {{GateKind::H, 0, 0}, {GateKind::S, 0, 0},
                               {GateKind::X, 0, 0}, {GateKind::Y, 0, 0},
                               {GateKind::Z, 0, 0}};
    if (n >= 2) gates.push_back({GateKind::CNOT, 0, 1});
    if (n >= 2) gates.push_back({GateKind::CNOT, 1, 0});
    for (const Gate &gt : gates) {
      CliffordElement e = gate_element(n, gt);
      REQUIRE(is_valid(e));
      Mat u = ts::dense_gate(n, gt);
      for (int t = 0; t < 8; ++t) {
        PauliOp p(n);
        for (int q = 0; q < n; ++q) {
          p.x.set(q, rng() & 1);
          p.z.set(q, rng() & 1);
        }
        Mat lhs = ts::dense_pauli(conjugate_pauli(e, p));
        Mat rhs = u * ts::dense_pauli(p) * u.adjoint();
        REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("conjugation keeps Hadamard action and identity fixed points",
          "[clifford]") {
  CliffordElement id = CliffordElement::identity(1);
  CliffordElement h = gate_element(1, {GateKind::H, 0, 0});
  auto x = PauliOp::single_x(1, 0), z = PauliOp::single_z(1, 0);
  REQUIRE(conjugate_pauli(id, x) == x);
  REQUIRE(conjugate_pauli(id, z) == z);
  REQUIRE(conjugate_pauli(h, x) == z);
  REQUIRE(conjugate_pauli(h, z) == x);
}

TEST_CASE("random elements are symplectic for n up to 8", "[clifford]") {
  std::mt19937_64 rng(23);
  for (int n = 1; n <= 8; ++n)
    for (int t = 0; t < 20; ++t) REQUIRE(is_valid(random_clifford(n, rng)));
}

TEST_CASE("group laws on the (C,h) representation", "[clifford]") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 100; ++t) {
    auto g = random_clifford(1, rng);
    REQUIRE(compose(CliffordElement::identity(1), g) == g);
    REQUIRE(compose(g, CliffordElement::identity(1)) == g);
  }
  for (int t = 0; t < 100; ++t) {
    auto g = random_clifford(2, rng);
    REQUIRE(compose(g, inverse(g)).is_identity());
    REQUIRE(compose(inverse(g), g).is_identity());
  }
  // associativity, n <= 4
  for (int n : {1, 2, 3, 4})
    for (int t = 0; t < 20; ++t) {
      auto a = random_clifford(n, rng), b = random_clifford(n, rng),
           c = random_clifford(n, rng);
      REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
}

TEST_CASE("inverse of the Hadamard class is itself", "[clifford]") {
  CliffordElement h = gate_element(1, {GateKind::H, 0, 0});
  REQUIRE(inverse(h) == h);
  REQUIRE(inverse(CliffordElement::identity(1)).is_identity());
}

TEST_CASE("compose and conjugate match the dense single-qubit oracle",
          "[clifford]") {
  std::mt19937_64 rng(31);
  REQUIRE(ts::single_qubit_unitaries().size() == 24);
  for (int t = 0; t < 60; ++t) {
    auto a = random_clifford(1, rng), b = random_clifford(1, rng);
    Mat ua = ts::dense_oracle_n1(a), ub = ts::dense_oracle_n1(b);
    Mat uab = ts::dense_oracle_n1(compose(a, b));
    REQUIRE(ts::same_up_to_phase(uab, ua * ub));

    // all four Paulis conjugate correctly
    for (auto p : {PauliOp::identity(1), PauliOp::single_x(1, 0),
                   PauliOp::single_y(1, 0), PauliOp::single_z(1, 0)}) {
      Mat lhs = ts::dense_pauli(conjugate_pauli(a, p));
      Mat rhs = ua * ts::dense_pauli(p) * ua.adjoint();
      REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("conjugation preserves commutation relations", "[clifford]") {
  std::mt19937_64 rng(37);
  for (int n : {1, 2, 3}) {
    auto g = random_clifford(n, rng);
    std::vector<PauliOp> gens;
    for (int q = 0; q < n; ++q) {
      gens.push_back(PauliOp::single_x(n, q));
      gens.push_back(PauliOp::single_z(n, q));
    }
    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = 0; j < gens.size(); ++j)
        REQUIRE(commutes(gens[i], gens[j]) ==
                commutes(conjugate_pauli(g, gens[i]),
                         conjugate_pauli(g, gens[j])));
  }
}

TEST_CASE("enumerated group is closed and indexed", "[clifford]") {
  const auto &grp = CliffordGroup::get(1);
  REQUIRE(grp.size() == 24);
  REQUIRE(grp.symplectic_count() == 6);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    size_t i = uniform_below(rng, grp.size());
    size_t j = uniform_below(rng, grp.size());
    size_t k = grp.index_of(compose(grp[i], grp[j]));
    REQUIRE(k < grp.size());
  }
  REQUIRE(CliffordGroup::get(2).size() == 11520);
}

TEST_CASE("sampling is uniform over the 24 single-qubit classes",
          "[clifford][sampling]") {
  const auto &grp = CliffordGroup::get(1);
  std::mt19937_64 rng(20240817);
  std::vector<uint64_t> counts(24, 0);
  for (int t = 0; t < 24000; ++t) {
    auto g = random_clifford(1, rng);
    counts[grp.index_of(g)]++;
  }
  auto res = chi2_uniform_test(counts);
  INFO("chi2 = " << res.statistic << " p = " << res.p_value);
  REQUIRE(res.p_value >= 0.01);
}

TEST_CASE("decompose: identity gives the empty sequence", "[decompose]") {
  for (int n : {1, 2, 3})
    REQUIRE(decompose(CliffordElement::identity(n)).empty());
}

TEST_CASE("decompose recomposes exactly, n up to 4", "[decompose]") {
  std::mt19937_64 rng(43);
  size_t max_len = 0;
  for (int n : {1, 2, 3, 4})
    for (int t = 0; t < 100; ++t) {
      auto g = random_clifford(n, rng);
      auto seq = decompose(g);
      max_len = std::max(max_len, seq.size());
      REQUIRE(recompose(n, seq) == g);
      REQUIRE(seq.size() <= static_cast<size_t>(16 * n * n + 8));
    }
  INFO("max sequence length " << max_len);
}

TEST_CASE("decomposition matches dense unitaries at n=1 and n=2",
          "[decompose]") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 25; ++t) {
    auto g = random_clifford(1, rng);
    Mat u = ts::dense_from_seq(1, decompose(g));
    REQUIRE(ts::same_up_to_phase(u, ts::dense_oracle_n1(g)));
  }
  // n=2: dense recomposition must reproduce the conjugation action
  for (int t = 0; t < 10; ++t) {
    auto g = random_clifford(2, rng);
    Mat u = ts::dense_from_seq(2, decompose(g));
    for (int q = 0; q < 2; ++q)
      for (auto p : {PauliOp::single_x(2, q), PauliOp::single_z(2, q)}) {
        Mat lhs = ts::dense_pauli(conjugate_pauli(g, p));
        Mat rhs = u * ts::dense_pauli(p) * u.adjoint();
        REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
      }
  }
}

TEST_CASE("minimal single-qubit table averages 1.875 gates", "[decompose]") {
  auto counts = single_qubit_min_gate_counts();
  REQUIRE(counts.size() == 24);
  REQUIRE(average_single_qubit_gate_count() == Approx(1.875).margin(1e-12));
}

TEST_CASE("axis rotation elements match their dense unitaries", "[clifford]") {
  struct Case {
    bool about_x;
    bool positive;
  };
  for (auto cs : {Case{true, true}, Case{true, false}, Case{false, true},
                  Case{false, false}}) {
    CliffordElement e = detail::axis_rotation_element(cs.about_x, cs.positive);
    REQUIRE(is_valid(e));
    double sign = cs.positive ? 1.0 : -1.0;
    Mat axis = cs.about_x ? rblab::detail::sigma(1) : rblab::detail::sigma(2);
    Mat u = std::cos(M_PI / 4) * Mat::Identity(2, 2) -
            cxd(0, 1) * sign * std::sin(M_PI / 4) * axis;
    for (auto p : {PauliOp::single_x(1, 0), PauliOp::single_z(1, 0)}) {
      Mat lhs = ts::dense_pauli(conjugate_pauli(e, p));
      Mat rhs = u * ts::dense_pauli(p) * u.adjoint();
      REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("hex wire format round trips", "[clifford]") {
  std::mt19937_64 rng(53);
  for (int n : {1, 2, 5}) {
    for (int t = 0; t < 20; ++t) {
      auto g = random_clifford(n, rng);
      REQUIRE(from_hex(n, to_hex(g)) == g);
    }
  }
  REQUIRE_THROWS_AS(from_hex(1, "zz zz"), contract_error);
  REQUIRE_THROWS_AS(from_hex(1, "f 0"), contract_error);  // singular C
}

TEST_CASE("seeded sampling is deterministic", "[clifford]") {
  std::mt19937_64 a(99), b(99), c(100);
  auto ga = random_clifford(3, a), gb = random_clifford(3, b),
       gc = random_clifford(3, c);
  REQUIRE(ga == gb);
  REQUIRE_FALSE(ga == gc);
}
