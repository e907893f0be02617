/*
 * bounds.hpp — analytic lower bounds on the optimal quantum cost.
 *
 * Majorization route: every band entry of the tridiagonal cost matrix A
 * is bounded by the maximal entry A↑, so λ_max(A) ≤ λ_max(A′) with A′
 * the constant-band matrix — and the spectrum of A′ is classical:
 * λ′_max = 2 A↑ cos(π/(N+2)) (largest root of the order-(N+1) Dickson
 * polynomial / the constant-tridiagonal characteristic polynomial).
 *
 * Relaxing the two-arm problem to a single lossy arm (η = min(η_a, η_b),
 * other arm perfect — which can only improve estimation) yields the
 * finite-N bound
 *
 *     δ²φ̃ ≥ 2 [ 1 − cos(π/(N+2)) · T_1(N, η) ],
 *
 * whose large-N limit is (1−η)/(4ηN); the equal-arm analogue tightens
 * the constant to (1−η)/(ηN).  Both asymptotes keep their 1/N shot-noise
 * form — loss pins the problem to SQL-like scaling, a constant factor
 * away from the classical benchmark, rather than the lossless 1/N²
 * Heisenberg scaling.
 */

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "lossphase/classical.hpp"
#include "lossphase/loss_model.hpp"

namespace lossphase {

// ── max_band_element ─────────────────────────────────────────────────────────
// Largest superdiagonal entry A↑ = max_n A_{n,n−1} of the default-cost
// matrix and its location, by direct scan (ties resolved to the smallest
// n).  The maximum sits at n = N for a single lossy arm and at n = ⌈N/2⌉
// for equal arms; the scan verifies rather than assumes this.
struct BandMaximum {
  double value = 0.0;
  int argmax_n = 0;
};

inline BandMaximum max_band_element(int n_total, const LossModel& loss) {
  if (n_total < 1)
    throw std::domain_error("max_band_element: need N >= 1 (no band at N=0)");
  const auto t_a = detail::arm_overlap_table(n_total, 1, loss.eta_a);
  const auto t_b = detail::arm_overlap_table(n_total, 1, loss.eta_b);
  BandMaximum best{-1.0, 0};
  for (int n = 1; n <= n_total; ++n) {
    const double entry = t_a[static_cast<std::size_t>(n)] *
                         t_b[static_cast<std::size_t>(n_total - n + 1)];
    if (entry > best.value) best = {entry, n};
  }
  return best;
}

// ── majorizer_lambda_max ─────────────────────────────────────────────────────
// Top eigenvalue of the constant-band tridiagonal majorizer A′ with band
// value a_up: λ′_max = 2 a_up cos(π/(N+2)).
inline double majorizer_lambda_max(double a_up, int n_total) {
  if (!(a_up >= 0.0))
    throw std::domain_error("majorizer_lambda_max: band value must be >= 0");
  if (n_total < 0)
    throw std::domain_error("majorizer_lambda_max: need N >= 0");
  return 2.0 * a_up * std::cos(M_PI / (static_cast<double>(n_total) + 2.0));
}

// ── finite_n_quantum_bound ───────────────────────────────────────────────────
// Finite-N lower bound on the optimal cost for transmission η in the
// lossy arm (other arm perfect):
//
//     2 [ 1 − cos(π/(N+2)) · Σ_l √(B_l^N(η) B_l^{N−1}(η)) ].
//
// Lower-bounds the two-arm problem when evaluated at η = min(η_a, η_b).
// Tight at η = 1, where it reproduces the lossless optimum.
inline double finite_n_quantum_bound(int n_total, double eta) {
  if (n_total < 1)
    throw std::domain_error("finite_n_quantum_bound: need N >= 1");
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::domain_error(
        "finite_n_quantum_bound: need 0 < eta <= 1 (at eta = 0 the cost is "
        "identically 2)");
  return 2.0 * (1.0 - std::cos(M_PI / (static_cast<double>(n_total) + 2.0)) *
                          arm_overlap(n_total, 1, eta));
}

// ── asymptotic_quantum_bound ─────────────────────────────────────────────────
// Leading 1/N term of the quantum lower bound: (1−η)/(4ηN) from the
// single-lossy-arm relaxation with η = min(η_a, η_b), or the four-fold
// tighter (1−η)/(ηN) valid for equal arms.  The O(1/N²) remainder is
// dropped.
inline double asymptotic_quantum_bound(int n_total, const LossModel& loss,
                                       bool equal_arms) {
  if (n_total < 1)
    throw std::domain_error("asymptotic_quantum_bound: need N >= 1");
  if (equal_arms) {
    if (!loss.equal_arms())
      throw std::domain_error(
          "asymptotic_quantum_bound: equal-arm form requires eta_a == eta_b");
    const double eta = loss.eta_a;
    if (eta == 1.0)
      throw std::domain_error(
          "asymptotic_quantum_bound: no 1/N bound in the lossless regime");
    if (eta == 0.0)
      throw std::domain_error(
          "asymptotic_quantum_bound: formula diverges at eta = 0");
    return (1.0 - eta) / (eta * static_cast<double>(n_total));
  }
  const double eta = loss.min_eta();
  if (eta == 1.0)
    throw std::domain_error(
        "asymptotic_quantum_bound: no 1/N bound in the lossless regime");
  if (eta == 0.0)
    throw std::domain_error(
        "asymptotic_quantum_bound: formula diverges at eta = 0");
  return (1.0 - eta) / (4.0 * eta * static_cast<double>(n_total));
}

// ── BoundReport ──────────────────────────────────────────────────────────────
// Everything the bounds/classical machinery can say about one (N, loss)
// point.  Fields that have no applicable closed form (lossless gain,
// asymptotics at η ∈ {0, 1}, classical benchmark with an opaque arm) are
// left empty rather than invented.
struct BoundReport {
  int n_total;
  LossModel loss;
  std::optional<double> a_up;
  std::optional<int> argmax_n;
  std::optional<double> majorizer_lambda;
  std::optional<double> finite_n_bound;
  std::optional<double> asymptotic_bound;
  std::optional<double> classical_cost;
  std::optional<double> classical_tau;
  std::optional<double> gain;

  BoundReport(int n, const LossModel& l) : n_total(n), loss(l) {}
};

// Assemble the full report; the classical benchmark is evaluated at mean
// photon number n̄ = N and the asymptotically optimal splitting.
inline BoundReport make_bound_report(int n_total, const LossModel& loss) {
  if (n_total < 0)
    throw std::domain_error("make_bound_report: need N >= 0");
  loss.validate();
  BoundReport report(n_total, loss);
  const double eta_min = loss.min_eta();

  if (n_total >= 1) {
    const BandMaximum band = max_band_element(n_total, loss);
    report.a_up = band.value;
    report.argmax_n = band.argmax_n;
    report.majorizer_lambda = majorizer_lambda_max(band.value, n_total);
    if (eta_min > 0.0) {
      report.finite_n_bound = finite_n_quantum_bound(n_total, eta_min);
      if (eta_min < 1.0)
        report.asymptotic_bound =
            asymptotic_quantum_bound(n_total, loss, loss.equal_arms());
    }
    if (loss.eta_a > 0.0 && loss.eta_b > 0.0) {
      report.classical_tau = classical_optimal_tau(loss);
      report.classical_cost = classical_cost(
          static_cast<double>(n_total), loss, *report.classical_tau);
    }
  }
  if (eta_min < 1.0 &&
      (loss.equal_arms() || loss.eta_a == 1.0 || loss.eta_b == 1.0))
    report.gain = gain_factor(loss);
  return report;
}

} // namespace lossphase
