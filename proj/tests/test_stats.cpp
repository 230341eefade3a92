#include <catch2/catch.hpp>

#include <cmath>

#include "rblab/stats.hpp"

using namespace rblab;

TEST_CASE("incomplete gamma agrees with erf at a = 1/2", "[stats]") {
  // P(1/2, x) = erf(sqrt(x))
  for (double x : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    REQUIRE(detail::gamma_p(0.5, x) ==
            Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
  }
  // P(1, x) = 1 - exp(-x)
  for (double x : {0.3, 1.0, 4.0}) {
    REQUIRE(detail::gamma_p(1.0, x) == Approx(1 - std::exp(-x)).epsilon(1e-12));
  }
}

TEST_CASE("chi-square quantiles match tabulated values", "[stats]") {
  REQUIRE(chi2_quantile(0.99, 23) == Approx(41.6384).margin(2e-3));
  REQUIRE(chi2_quantile(0.95, 10) == Approx(18.3070).margin(2e-3));
  REQUIRE(chi2_cdf(chi2_quantile(0.99, 719), 719) == Approx(0.99).margin(1e-10));
}

TEST_CASE("uniform chi-square test accepts uniform counts and rejects skewed",
          "[stats]") {
  std::mt19937_64 rng(3);
  std::vector<uint64_t> counts(24, 0);
  for (int i = 0; i < 24000; ++i) counts[uniform_below(rng, 24)]++;
  auto res = chi2_uniform_test(counts);
  REQUIRE(res.p_value > 0.01);

  counts.assign(24, 1000);
  counts[0] = 1500;
  counts[1] = 500;
  REQUIRE(chi2_uniform_test(counts).p_value < 1e-6);
}

TEST_CASE("derived rng streams are reproducible and distinct", "[stats]") {
  auto a1 = derive_rng(42, 5, 7);
  auto a2 = derive_rng(42, 5, 7);
  auto b = derive_rng(42, 5, 8);
  REQUIRE(a1() == a2());
  REQUIRE(a1() != b());
}

TEST_CASE("binomial draw stays within range and matches mean", "[stats]") {
  auto rng = derive_rng(1, 2, 3);
  double total = 0;
  const int reps = 2000, trials = 50;
  for (int i = 0; i < reps; ++i) {
    int s = binomial_draw(rng, trials, 0.3);
    REQUIRE(s >= 0);
    REQUIRE(s <= trials);
    total += s;
  }
  REQUIRE(total / (reps * trials) == Approx(0.3).margin(0.01));
}
