// Distance measures for a family of Pauli channels: diamond distance with
// its primal/dual certificates, the 1->1 Hermitian norm, and the average
// fidelity gap.

#include <cstdio>

#include "rblab/metrics.hpp"

using namespace rblab;

int main() {
  auto identity = depolarizing_pauli_channel(1.0, 2);
  std::printf("   p     delta_F    ||.||_1->1^H   diamond   certificate\n");
  for (double p : {0.999, 0.99, 0.95, 0.9, 0.8}) {
    auto dep = depolarizing_pauli_channel(p, 2);
    auto sa = pauli_channel_to_super(dep);
    auto res = pauli_diamond_distance(dep, identity);
    double df = delta_F(sa, Superoperator::identity(2));
    double nn = one_one_H_norm(
        Superoperator(2, sa.mat - Superoperator::identity(2).mat));
    std::printf("%.3f   %.6f   %.6f      %.6f  primal=dual=%.6f (%s)\n", p, df,
                nn, res.value, res.certificate.primal_lb,
                res.certificate.tight() ? "tight" : "LOOSE");
  }

  auto mb = min_fidelity_bound(depolarizing_pauli_channel(0.98, 2), identity);
  std::printf("\nminimum-fidelity bound at p = 0.98: %.4f (diamond %.4f)\n",
              mb.bound, mb.diamond);
  return 0;
}
