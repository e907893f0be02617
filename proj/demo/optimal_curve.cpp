/*
 * Minimal library walk-through: solve for the optimal probe at a few
 * photon numbers, compare against the analytic lower bound and the
 * coherent-state benchmark, and cross-check one point by Monte Carlo.
 */

#include <cstdio>

#include "lossphase/lossphase.hpp"

int main() {
  const auto loss = lossphase::LossModel::equal(0.8);

  std::printf("# equal-arm transmission eta = %.2f\n", loss.eta_a);
  std::printf("%6s %14s %14s %14s %8s\n", "N", "cost_opt", "bound_finite",
              "cost_classical", "gain");
  for (int n : {1, 2, 5, 10, 20, 50, 100}) {
    const auto solution = lossphase::optimize(n, loss);
    const double bound = lossphase::finite_n_quantum_bound(n, loss.eta_a);
    const double classical = lossphase::classical_cost(
        static_cast<double>(n), loss, lossphase::classical_optimal_tau(loss));
    std::printf("%6d %14.6e %14.6e %14.6e %8.4f\n", n, solution.avg_cost,
                bound, classical, lossphase::gain_factor(loss));
  }

  // Monte Carlo sanity check of the covariant measurement at N = 20.
  const auto solution = lossphase::optimize(20, loss);
  const auto mc = lossphase::monte_carlo_cost(
      solution.state, loss, lossphase::CostSpec::default_cost(), 200000,
      20250814);
  std::printf("\nN = 20 Monte Carlo: cost = %.6f +/- %.6f (exact %.6f)\n",
              mc.mean_cost, mc.std_error, solution.avg_cost);
  return 0;
}
