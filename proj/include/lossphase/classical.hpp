/*
 * classical.hpp — coherent-state benchmark for the same interferometer.
 *
 * The best classical strategy feeds a coherent state of mean photon
 * number n̄ through a beam splitter with transmission τ into the two
 * arms.  Its minimal average cost under the same covariant measurement is
 *
 *     ⟨C⟩_cl = 2 − 2 𝓑(n̄ η_a τ) 𝓑(n̄ η_b (1−τ)) / ( n̄ √(η_a τ η_b (1−τ)) ),
 *
 * where 𝓑 is the Bell polynomial of order 1/2,
 *
 *     𝓑(x) = e^{−x} Σ_{n≥0} x^n √n / n!   ( = E[√X], X ~ Poisson(x) ),
 *
 * minimized asymptotically by the splitting τ* = 1/(1 + √(η_a/η_b)).
 * Since 𝓑(x) ≈ √x (1 − 1/(8x)) for large x, the cost approaches
 * (1/(4n̄))·(1/(η_a τ) + 1/(η_b(1−τ))) — the shot-noise 1/n̄ scaling.
 */

#pragma once

#include <cmath>
#include <stdexcept>

#include "lossphase/loss_model.hpp"

namespace lossphase {

// ── bell_half ────────────────────────────────────────────────────────────────
// Bell polynomial of order 1/2: 𝓑(x) = e^{−x} Σ_{n≥0} x^n √n / n!.
//
// The series is truncated at n* = x + 12√x + 30; the Poisson tail beyond
// n* is below 1e-12 of the retained mass (Chernoff bound), so rel_tol
// values down to 1e-12 are honored.  Direct recurrence on the Poisson
// weights for x ≤ 600; log-domain per-term evaluation above (e^{−x}
// underflows past x ≈ 745).
inline double bell_half(double x, double rel_tol = 1e-12) {
  if (!(x >= 0.0)) throw std::domain_error("bell_half: x must be >= 0");
  if (!(rel_tol > 0.0))
    throw std::domain_error("bell_half: rel_tol must be positive");
  if (x == 0.0) return 0.0;

  const double n_star = x + 12.0 * std::sqrt(x) + 30.0;
  const int n_hi = static_cast<int>(std::ceil(n_star));

  if (x <= 600.0) {
    long double term = expl(-static_cast<long double>(x)); // Poisson weight n=0
    long double sum = 0.0L;
    for (int n = 1; n <= n_hi; ++n) {
      term *= static_cast<long double>(x) / static_cast<long double>(n);
      sum += term * sqrtl(static_cast<long double>(n));
    }
    return static_cast<double>(sum);
  }

  // Poisson mass below x − 12√x − 30 is likewise negligible.
  const int n_lo =
      static_cast<int>(std::floor(x - 12.0 * std::sqrt(x) - 30.0));
  const long double log_x = logl(static_cast<long double>(x));
  long double sum = 0.0L;
  for (int n = (n_lo > 1 ? n_lo : 1); n <= n_hi; ++n) {
    const long double log_term = -static_cast<long double>(x) +
                                 static_cast<long double>(n) * log_x -
                                 lgammal(static_cast<long double>(n) + 1.0L);
    sum += expl(log_term) * sqrtl(static_cast<long double>(n));
  }
  return static_cast<double>(sum);
}

// ── classical_cost ───────────────────────────────────────────────────────────
// Average cost of the coherent-state strategy with mean photon number
// n_mean and input splitting tau ∈ (0, 1); value in [0, 2].
inline double classical_cost(double n_mean, const LossModel& loss,
                             double tau) {
  if (!(n_mean > 0.0))
    throw std::domain_error("classical_cost: mean photon number must be > 0");
  if (!(tau > 0.0 && tau < 1.0))
    throw std::domain_error(
        "classical_cost: tau must lie strictly inside (0, 1); the edge "
        "values carry no phase information");
  if (loss.eta_a <= 0.0 || loss.eta_b <= 0.0)
    throw std::domain_error(
        "classical_cost: both transmissions must be positive");
  const double xa = n_mean * loss.eta_a * tau;
  const double xb = n_mean * loss.eta_b * (1.0 - tau);
  return 2.0 - 2.0 * bell_half(xa) * bell_half(xb) /
                   (n_mean * std::sqrt(loss.eta_a * tau * loss.eta_b *
                                       (1.0 - tau)));
}

// Sweep-friendly variant: τ ∈ {0, 1} (all light in one arm) returns the
// no-information cost 2 with a degeneracy flag instead of throwing — the
// documented convention for tabulated output.
struct ClassicalCostResult {
  double value = 2.0;
  bool degenerate_split = false;
};

inline ClassicalCostResult classical_cost_checked(double n_mean,
                                                  const LossModel& loss,
                                                  double tau) {
  if (tau == 0.0 || tau == 1.0) return {2.0, true};
  return {classical_cost(n_mean, loss, tau), false};
}

// ── classical_optimal_tau ────────────────────────────────────────────────────
// Asymptotically optimal beam-splitter transmission τ* = 1/(1+√(η_a/η_b)).
inline double classical_optimal_tau(const LossModel& loss) {
  if (loss.eta_a <= 0.0 || loss.eta_b <= 0.0)
    throw std::domain_error(
        "classical_optimal_tau: both transmissions must be positive");
  return 1.0 / (1.0 + std::sqrt(loss.eta_a / loss.eta_b));
}

// ── classical_asymptotic_cost ────────────────────────────────────────────────
// Leading 1/n̄ term of the classical benchmark at the optimal splitting:
// (1/(4n̄))·(1/(η_a τ*) + 1/(η_b(1−τ*))).  Equal arms give 1/(η n̄); a
// single lossy arm (η_b = 1) gives (1+√η)²/(4η n̄).
inline double classical_asymptotic_cost(double n_mean, const LossModel& loss) {
  if (!(n_mean > 0.0))
    throw std::domain_error(
        "classical_asymptotic_cost: mean photon number must be > 0");
  const double tau = classical_optimal_tau(loss);
  return 0.25 / n_mean *
         (1.0 / (loss.eta_a * tau) + 1.0 / (loss.eta_b * (1.0 - tau)));
}

// ── gain_factor ──────────────────────────────────────────────────────────────
// Asymptotic quantum advantage δφ_classical/δφ_quantum in the closed-form
// regimes: 1/√(1−η) for equal arms, √((1+√η)/(1−√η)) when exactly one
// arm is lossy (the other perfect).  Unbounded in the lossless limit.
inline double gain_factor(const LossModel& loss) {
  if (loss.equal_arms()) {
    if (loss.eta_a == 1.0)
      throw std::domain_error(
          "gain_factor: lossless interferometer has unbounded gain");
    return 1.0 / std::sqrt(1.0 - loss.eta_a);
  }
  const bool a_perfect = loss.eta_a == 1.0;
  const bool b_perfect = loss.eta_b == 1.0;
  if (a_perfect != b_perfect) {
    const double eta = a_perfect ? loss.eta_b : loss.eta_a;
    const double root = std::sqrt(eta);
    return std::sqrt((1.0 + root) / (1.0 - root));
  }
  throw std::domain_error(
      "gain_factor: closed form requires equal arms or one lossless arm");
}

} // namespace lossphase
