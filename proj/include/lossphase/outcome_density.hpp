/*
 * outcome_density.hpp — exact outcome statistics of the optimal covariant
 * measurement.
 *
 * The optimal POVM is the phase-shifted family of one block-diagonal
 * seed (one rank-one block |e⟩⟨e|, |e⟩ = Σ_n |n, N'−n⟩, per surviving
 * photon number N').  For a probe α under loss (η_a, η_b), the outcome
 * deviation θ = φ̃ − φ is distributed as
 *
 *     p(θ) = (1/2π) Σ_{l_a,l_b} | Σ_n α_n β_n^{l_a,l_b} e^{inθ} |²
 *          = (1/2π) [ d_0 + 2 Σ_{k≥1} d_k cos(kθ) ],
 *
 *     d_k = Σ_{l_a,l_b} Σ_n α_n α_{n+k} β_n^{l_a,l_b} β_{n+k}^{l_a,l_b}
 *         = Σ_n α_n α_{n+k} · T_k(n+k, η_a) · T_k(N−n, η_b),
 *
 * a trigonometric polynomial of degree N — the block sums collapse into
 * per-arm overlap factors exactly as in the cost matrix.  d_0 = 1
 * (normalization) and c_0 + 2Σ_k c_k d_k reproduces the matrix cost
 * c_0 − α†Mα: the measurement achieves the eigenvalue bound, which is
 * what makes it optimal.  The per-block weighted amplitude vectors are
 * intermediate quantities only; the density keeps just the Fourier
 * coefficients.
 */

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lossphase/cost_spec.hpp"
#include "lossphase/loss_model.hpp"
#include "lossphase/probe_state.hpp"

namespace lossphase {

inline constexpr double two_pi = 2.0 * M_PI;

// ── OutcomeDensity ───────────────────────────────────────────────────────────
// Fourier representation (d_0, …, d_N) of the outcome-deviation density
// p(θ) = (1/2π)[d_0 + 2Σ d_k cos(kθ)] on [0, 2π).
struct OutcomeDensity {
  int n_total = 0;
  std::vector<double> fourier{1.0};

  // p(θ); cos(kθ) by forward recurrence.
  double pdf(double theta) const {
    const double c1 = std::cos(theta);
    double ckm1 = 1.0, ck = c1;
    double sum = fourier[0];
    for (int k = 1; k <= n_total; ++k) {
      sum += 2.0 * fourier[static_cast<std::size_t>(k)] * ck;
      const double next = 2.0 * c1 * ck - ckm1;
      ckm1 = ck;
      ck = next;
    }
    return sum / two_pi;
  }

  // F(θ) = ∫₀^θ p = (1/2π)[d_0 θ + 2Σ_k d_k sin(kθ)/k] for θ ∈ [0, 2π].
  double cdf(double theta) const {
    const double c1 = std::cos(theta);
    const double s1 = std::sin(theta);
    double ckm1 = 1.0, ck = c1; // cos((k)θ) values
    double skm1 = 0.0, sk = s1; // sin((k)θ) values
    double sum = fourier[0] * theta;
    for (int k = 1; k <= n_total; ++k) {
      sum += 2.0 * fourier[static_cast<std::size_t>(k)] * sk /
             static_cast<double>(k);
      const double cn = 2.0 * c1 * ck - ckm1;
      const double sn = 2.0 * c1 * sk - skm1;
      ckm1 = ck;
      ck = cn;
      skm1 = sk;
      sk = sn;
    }
    return sum / two_pi;
  }
};

// ── outcome_density ──────────────────────────────────────────────────────────
// Build the exact outcome density of the optimal covariant measurement
// for the given probe and loss model.  Verifies the analytic
// normalization d_0 = 1 to 1e-10.
inline OutcomeDensity outcome_density(const ProbeState& state,
                                      const LossModel& loss) {
  state.validate();
  loss.validate();
  const int n_total = state.n_total;

  OutcomeDensity density;
  density.n_total = n_total;
  density.fourier.assign(static_cast<std::size_t>(n_total) + 1, 0.0);

  for (int k = 0; k <= n_total; ++k) {
    const auto t_a = detail::arm_overlap_table(n_total, k, loss.eta_a);
    const auto t_b = detail::arm_overlap_table(n_total, k, loss.eta_b);
    long double dk = 0.0L;
    for (int n = 0; n + k <= n_total; ++n) {
      dk += static_cast<long double>(
                state.amplitudes[static_cast<std::size_t>(n)]) *
            state.amplitudes[static_cast<std::size_t>(n + k)] *
            t_a[static_cast<std::size_t>(n + k)] *
            t_b[static_cast<std::size_t>(n_total - n)];
    }
    density.fourier[static_cast<std::size_t>(k)] = static_cast<double>(dk);
  }

  if (std::abs(density.fourier[0] - 1.0) > 1e-10)
    throw std::runtime_error(
        "outcome_density: normalization check d_0 = 1 failed");
  density.fourier[0] = 1.0; // analytic value, exact after the check
  return density;
}

// ── expected_cost_exact ──────────────────────────────────────────────────────
// Exact average cost by Fourier pairing: ⟨C⟩ = c_0 + 2 Σ_k c_k d_k.
// Harmonics of the cost beyond the density degree N pair with zero
// coefficients and drop out; the default cost gives 2 − 2 d_1.
inline double expected_cost_exact(const OutcomeDensity& density,
                                  const CostSpec& cost) {
  cost.validate();
  double value = cost.c0;
  const int k_max =
      cost.bandwidth() < density.n_total ? cost.bandwidth() : density.n_total;
  for (int k = 1; k <= k_max; ++k)
    value += 2.0 * cost.coefficient(k) *
             density.fourier[static_cast<std::size_t>(k)];
  return value;
}

} // namespace lossphase
