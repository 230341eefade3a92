// End-to-end benchmarking run against a gate-dependent noise model:
// simulate, fit both decay models, and compare the estimate with the
// exact depolarizing parameter of the average error operator.

#include <cstdio>

#include "rblab/fitting.hpp"

using namespace rblab;

int main() {
  auto noise = NoiseModel::over_rotation(0.08);
  auto spam = SpamSpec::ideal(1);
  auto mc = model_coefficients(noise, spam);
  std::printf("exact:   p = %.6f   r = %.6f   q - p^2 = %+.2e\n", mc.p,
              mc.error_rate(), mc.q - mc.p * mc.p);

  RbConfig cfg(noise, spam);
  cfg.m_list = {1, 2, 4, 8, 16, 32, 64, 100};
  cfg.sequences_per_length = 150;
  cfg.shots = 200;
  cfg.seed = 7;
  auto data = run_experiment(cfg);

  auto f0 = fit_zeroth(data);
  auto f1 = fit_first(data);
  std::printf("zeroth:  p = %.6f +- %.6f   r = %.6f\n", f0.p, f0.se_p,
              f0.error_rate());
  std::printf("first:   p = %.6f +- %.6f   D = %+.2e\n", f1.p, f1.se_p,
              f1.dcoef);

  std::printf("\n  m    mean      zeroth fit\n");
  auto means = data.mean_survivals();
  for (size_t i = 0; i < cfg.m_list.size(); ++i)
    std::printf("%4d   %.5f   %.5f\n", cfg.m_list[i], means[i],
                f0.predict(cfg.m_list[i]));
  return 0;
}
