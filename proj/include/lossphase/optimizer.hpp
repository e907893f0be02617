/*
 * optimizer.hpp — end-to-end solve: loss model + cost → optimal probe.
 *
 * Composes the matrix assembly and the eigensolver: the minimal average
 * cost over all N-photon probes (measured by the optimal covariant POVM)
 * is  c_0 − λ_max(M),  attained by the top eigenvector of M as the input
 * amplitude vector.
 */

#pragma once

#include <cmath>
#include <utility>

#include "lossphase/cost_matrix.hpp"
#include "lossphase/cost_spec.hpp"
#include "lossphase/eigensolver.hpp"
#include "lossphase/loss_model.hpp"
#include "lossphase/probe_state.hpp"

namespace lossphase {

// ── OptimalSolution ──────────────────────────────────────────────────────────
// lambda_max: top eigenvalue of the cost matrix; state: optimal probe
// (unit norm, entrywise non-negative); avg_cost: minimal Bayesian average
// cost c0 − λ_max (the phase variance measure δ²φ̃ for the default cost);
// residual / iterations / near_degenerate: forwarded solver diagnostics.
struct OptimalSolution {
  double lambda_max = 0.0;
  ProbeState state;
  double avg_cost = 0.0;
  double residual = 0.0;
  std::int64_t iterations = 0;
  bool near_degenerate = false;

  // Root-cost δφ = √(avg_cost), the uncertainty scale plotted against N.
  double dphi() const { return std::sqrt(avg_cost); }
};

// ── optimize ─────────────────────────────────────────────────────────────────
// Globally optimal N-photon strategy for the given loss model and cost.
inline OptimalSolution optimize(int n_total, const LossModel& loss,
                                const CostSpec& cost = CostSpec::default_cost(),
                                double tol = 1e-12) {
  const CostMatrix m = build_cost_matrix(n_total, loss, cost);
  EigenResult eig = max_eigenpair(m, tol);

  OptimalSolution solution;
  solution.lambda_max = eig.lambda;
  solution.avg_cost = cost.c0 - eig.lambda;
  solution.residual = eig.residual;
  solution.iterations = eig.iterations;
  solution.near_degenerate = eig.near_degenerate;
  solution.state = ProbeState(n_total, std::move(eig.vector));
  return solution;
}

} // namespace lossphase
