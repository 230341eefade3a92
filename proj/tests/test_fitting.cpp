#include <catch2/catch.hpp>

#include <cmath>

#include "rblab/fitting.hpp"
#include "support.hpp"

using namespace rblab;
namespace ts = rblab::testsupport;

namespace {

/// Noise-free dataset generated straight from a decay model.
RbDataset synthetic(const std::vector<int> &ms, double a, double p, double b,
                    double dcoef = 0.0, int k_per_m = 3) {
  RbDataset data;
  data.n = 1;
  data.m_list = ms;
  data.sequences_per_length = k_per_m;
  for (int m : ms) {
    double y = a * std::pow(p, m) + b;
    if (m >= 2) y += dcoef * (m - 1) * std::pow(p, m - 2);
    for (int k = 0; k < k_per_m; ++k)
      data.records.push_back({m, k, y, 0, 0});
  }
  return data;
}

const std::vector<int> kSpecGrid = {1, 2, 5, 10, 20, 50, 100};

}  // namespace

TEST_CASE("zeroth fit recovers exact synthetic parameters", "[fitting]") {
  auto data = synthetic(kSpecGrid, 0.49, 0.98, 0.5);
  auto fit = fit_zeroth(data);
  REQUIRE(fit.converged);
  REQUIRE_FALSE(fit.flat_curve);
  REQUIRE(fit.p == Approx(0.98).margin(1e-8));
  REQUIRE(fit.a == Approx(0.49).margin(1e-8));
  REQUIRE(fit.b == Approx(0.5).margin(1e-8));
  REQUIRE(fit.error_rate() == Approx(0.01).margin(1e-8));
}

TEST_CASE("self-consistency across decay rates for both models", "[fitting]") {
  for (double p : {0.5, 0.9, 0.99, 0.999}) {
    auto data = synthetic(kSpecGrid, 0.45, p, 0.5);
    auto f0 = fit_zeroth(data);
    REQUIRE(f0.p == Approx(p).margin(1e-6));
    REQUIRE(f0.a == Approx(0.45).margin(1e-6));
    auto f1 = fit_first(data);
    REQUIRE(f1.p == Approx(p).margin(1e-6));
    REQUIRE(std::abs(f1.dcoef) < 1e-6);
  }
}

TEST_CASE("first-order fit recovers the correction amplitude", "[fitting]") {
  auto data = synthetic({1, 2, 3, 5, 8, 12, 20, 30, 50}, 0.5, 0.95, 0.5, 0.002);
  auto fit = fit_first(data);
  REQUIRE(fit.converged);
  REQUIRE(fit.p == Approx(0.95).margin(1e-6));
  REQUIRE(fit.dcoef == Approx(0.002).margin(1e-6));
}

TEST_CASE("fit preconditions", "[fitting]") {
  auto tiny = synthetic({1, 2}, 0.5, 0.9, 0.5);
  REQUIRE_THROWS_AS(fit_zeroth(tiny), contract_error);
  auto three = synthetic({1, 2, 5}, 0.5, 0.9, 0.5);
  REQUIRE_NOTHROW(fit_zeroth(three));
  REQUIRE_THROWS_AS(fit_first(three), contract_error);
}

TEST_CASE("flat curves raise the flag and return no estimate", "[fitting]") {
  auto flat = synthetic(kSpecGrid, 0.0, 0.9, 1.0);  // all survivals 1
  auto fit = fit_zeroth(flat);
  REQUIRE(fit.flat_curve);
  REQUIRE_FALSE(fit.converged);
  auto fit1 = fit_first(flat);
  REQUIRE(fit1.flat_curve);
}

TEST_CASE("simulated benchmarking run recovers p within two per mille",
          "[fitting][sim]") {
  RbConfig cfg(NoiseModel::depolarizing_noise(1, 0.98), SpamSpec::ideal(1));
  cfg.m_list = kSpecGrid;
  cfg.sequences_per_length = 100;
  cfg.shots = 100;
  cfg.seed = 2024;
  auto data = run_experiment(cfg);
  auto fit = fit_zeroth(data);
  REQUIRE(fit.converged);
  REQUIRE(std::abs(fit.p - 0.98) < 0.002);
  REQUIRE(fit.error_rate() == Approx((1 - fit.p) / 2).margin(1e-12));
}

TEST_CASE("standard error of p shrinks as K grows", "[fitting][sim]") {
  double prev = std::numeric_limits<double>::infinity();
  for (int k : {10, 100, 1000}) {
    RbConfig cfg(NoiseModel::depolarizing_noise(1, 0.97), SpamSpec::ideal(1));
    cfg.m_list = {1, 2, 5, 10, 20, 50};
    cfg.sequences_per_length = k;
    cfg.shots = 100;
    cfg.seed = 31;
    auto fit = fit_zeroth(run_experiment(cfg));
    REQUIRE(fit.converged);
    REQUIRE(fit.se_p < prev);
    prev = fit.se_p;
  }
}

TEST_CASE("estimates stay inside the box", "[fitting]") {
  // rising curve: the best exponential pushes p toward the upper bound
  RbDataset data;
  data.n = 1;
  data.m_list = {1, 5, 10, 20};
  data.sequences_per_length = 1;
  int i = 0;
  for (int m : data.m_list)
    data.records.push_back({m, 0, 0.5 + 0.04 * i++, 0, 0});
  auto fit = fit_zeroth(data);
  REQUIRE(fit.p >= 0.0);
  REQUIRE(fit.p <= 1.0);
}

TEST_CASE("gate-independent data keeps D consistent with zero and the "
          "comparison flag clear",
          "[fitting][compare]") {
  RbConfig cfg(NoiseModel::depolarizing_noise(1, 0.96), SpamSpec::ideal(1));
  cfg.m_list = {1, 2, 3, 5, 8, 12, 20, 35, 60};
  cfg.sequences_per_length = 150;
  cfg.shots = 200;
  cfg.seed = 8;
  auto data = run_experiment(cfg);
  auto fit = fit_first(data);
  REQUIRE(std::abs(fit.dcoef) < 3 * fit.se_d);
  auto cmp = compare_models(data);
  REQUIRE_FALSE(cmp.gate_dependent);
  REQUIRE(std::abs(cmp.zeroth.p - cmp.first.p) <=
          std::max(cmp.combined_se, 1e-12) * cmp.threshold + 1e-12);
}

TEST_CASE("strong coherent gate dependence trips the comparison flag",
          "[fitting][compare]") {
  // physical over-rotations (each element runs a quarter too long);
  // escalate until the exact coefficients show |q - p^2| above 1e-3
  double qgap = 0;
  NoiseModel noise = NoiseModel::depolarizing_noise(1, 1.0);
  for (double delta = 0.25; delta < 0.45 && std::abs(qgap) <= 1e-3;
       delta += 0.05) {
    noise = NoiseModel::over_rotation(delta);
    auto mc = model_coefficients(noise, SpamSpec::ideal(1));
    qgap = mc.q - mc.p * mc.p;
  }
  REQUIRE(std::abs(qgap) > 1e-3);

  // fit the exact average curve directly (infinite-K limit)
  std::vector<int> ms = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10,
                         12, 15, 20, 26, 34, 45, 60, 80, 100};
  auto curve = exact_average_curve(100, noise, SpamSpec::ideal(1));
  RbDataset data;
  data.n = 1;
  data.m_list = ms;
  data.sequences_per_length = 1;
  for (int m : ms) data.records.push_back({m, 0, curve[m - 1], 0, 0});
  auto cmp = compare_models(data);
  REQUIRE_FALSE(cmp.flat_curve);
  REQUIRE(cmp.gate_dependent);
}

TEST_CASE("first-order model with exact coefficients tracks gate-dependent "
          "decay far better than the zeroth",
          "[fitting][compare]") {
  auto spam = SpamSpec::ideal(1);
  auto noise = NoiseModel::over_rotation(0.1);
  auto mc = model_coefficients(noise, spam);
  auto curve = exact_average_curve(50, noise, spam);
  double worst0 = 0, worst1 = 0;
  for (int m = 1; m <= 50; ++m) {
    worst0 = std::max(worst0, std::abs(curve[m - 1] - mc.zeroth(m)));
    worst1 = std::max(worst1, std::abs(curve[m - 1] - mc.first(m)));
  }
  REQUIRE(worst1 < 0.3 * worst0);
}

TEST_CASE("flat-curve comparison carries the flag and no decision",
          "[fitting][compare]") {
  auto flat = synthetic(kSpecGrid, 0.0, 0.9, 1.0);
  auto cmp = compare_models(flat);
  REQUIRE(cmp.flat_curve);
  REQUIRE_FALSE(cmp.gate_dependent);
}

TEST_CASE("flat-curve classification covers all three degeneracies",
          "[fitting][classify]") {
  auto spam = SpamSpec::ideal(1);

  // perfect gates: constant at tr(rho E)
  auto ident = model_coefficients(NoiseModel::depolarizing_noise(1, 1.0), spam);
  auto rep1 = classify_flat_curve(ident);
  REQUIRE(rep1.cls == FlatCurveClass::P_ONE);
  REQUIRE(rep1.constant_value == Approx(1.0).margin(1e-12));

  // totally depolarizing: constant at tr(E)/d
  auto total = model_coefficients(NoiseModel::depolarizing_noise(1, 0.0), spam);
  auto rep2 = classify_flat_curve(total);
  REQUIRE(rep2.cls == FlatCurveClass::P_ZERO);
  REQUIRE(rep2.constant_value == Approx(0.5).margin(1e-12));

  // uninformative measurement E = I/2: A0 = 0 even with perfect gates
  SpamSpec blind = spam;
  blind.effect = Mat::Identity(2, 2) / 2.0;
  auto a0z = model_coefficients(NoiseModel::depolarizing_noise(1, 1.0), blind);
  auto rep3 = classify_flat_curve(a0z);
  REQUIRE(rep3.cls == FlatCurveClass::A0_ZERO);

  // generic noise: not flat
  auto generic = model_coefficients(NoiseModel::depolarizing_noise(1, 0.97), spam);
  REQUIRE(classify_flat_curve(generic).cls == FlatCurveClass::NOT_FLAT);

  // degenerate fitted data matches: pathological all-ones curve
  auto mc_path = model_coefficients(NoiseModel::inverse_gate_pathology(1), spam);
  auto rep4 = classify_flat_curve(mc_path);
  REQUIRE(rep4.cls == FlatCurveClass::P_ZERO);  // average error operator is Omega
}

TEST_CASE("simulated flat data from the pathology ends in a flat fit",
          "[fitting][classify]") {
  RbConfig cfg(NoiseModel::inverse_gate_pathology(1), SpamSpec::ideal(1));
  cfg.m_list = {1, 2, 5, 10};
  cfg.sequences_per_length = 20;
  cfg.seed = 3;
  auto data = run_experiment(cfg);
  auto fit = fit_zeroth(data);
  REQUIRE(fit.flat_curve);
}
