/*
 * cost_matrix.hpp — the banded matrix whose top eigenpair solves the
 * lossy phase-estimation problem.
 *
 * For a probe Σ_n α_n |n, N−n⟩ measured by the optimal covariant POVM,
 * the Bayesian average cost under a flat phase prior reduces to
 *
 *     ⟨C⟩ = c_0 − α† M α,
 *
 * where M is symmetric, banded with the cost bandwidth K, has zero
 * diagonal, and carries the loss structure in its bands:
 *
 *     M_{n−k,n} = (−c_k) · Σ_{l_a,l_b} β_n^{l_a,l_b} β_{n−k}^{l_a,l_b}
 *               = (−c_k) · T_k(n, η_a) · T_k(N−n+k, η_b),
 *
 * because the double sum over independent arm losses factorizes into one
 * arm_overlap factor per arm.  All entries are non-negative (β ≥ 0 and
 * c_k ≤ 0 enter with sign −c_k), so the Perron–Frobenius theorem applies:
 * the top eigenvector can be chosen entrywise non-negative and is the
 * optimal probe; the minimal cost is c_0 − λ_max.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "lossphase/cost_spec.hpp"
#include "lossphase/loss_model.hpp"

namespace lossphase {

// ── CostMatrix ───────────────────────────────────────────────────────────────
// Symmetric banded (N+1)×(N+1) matrix, zero diagonal.  bands[k-1][i]
// holds the superdiagonal entry M_{i,i+k} for i = 0..N−k, k = 1..K.
struct CostMatrix {
  int n_total = 0;
  int bandwidth = 0;
  std::vector<std::vector<double>> bands;

  // Matrix dimension N + 1.
  int dim() const { return n_total + 1; }

  bool is_tridiagonal() const { return bandwidth <= 1; }

  // Entry M_{i,i+k}; zero outside the stored bands.
  double band_entry(int k, int i) const {
    if (k < 1 || k > bandwidth || i < 0 || i + k > n_total) return 0.0;
    return bands[static_cast<std::size_t>(k) - 1][static_cast<std::size_t>(i)];
  }

  // y = M x.
  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    if (x.size() != static_cast<std::size_t>(dim()))
      throw std::invalid_argument("CostMatrix::apply: dimension mismatch");
    y.assign(x.size(), 0.0);
    for (int k = 1; k <= bandwidth; ++k) {
      const auto& band = bands[static_cast<std::size_t>(k) - 1];
      for (std::size_t i = 0; i < band.size(); ++i) {
        y[i] += band[i] * x[i + static_cast<std::size_t>(k)];
        y[i + static_cast<std::size_t>(k)] += band[i] * x[i];
      }
    }
  }

  // x† M x.
  double quadratic_form(const std::vector<double>& x) const {
    if (x.size() != static_cast<std::size_t>(dim()))
      throw std::invalid_argument(
          "CostMatrix::quadratic_form: dimension mismatch");
    long double q = 0.0L;
    for (int k = 1; k <= bandwidth; ++k) {
      const auto& band = bands[static_cast<std::size_t>(k) - 1];
      for (std::size_t i = 0; i < band.size(); ++i)
        q += 2.0L * static_cast<long double>(band[i]) * x[i] *
             x[i + static_cast<std::size_t>(k)];
    }
    return static_cast<double>(q);
  }
};

// ── matrix_element ───────────────────────────────────────────────────────────
// Loss-weighted amplitude overlap between Fock components n and n−k:
//
//     Σ_{l_a=0}^{n−k} Σ_{l_b=0}^{N−n} β_n^{l_a,l_b} β_{n−k}^{l_a,l_b}
//        = T_k(n, η_a) · T_k(N−n+k, η_b).
//
// The k = 1 case gives the tridiagonal band of the default cost; general
// k serves wider cost bandwidths.  Non-negative; equals 1 when lossless.
inline double matrix_element(int n_total, int n, int k, const LossModel& loss) {
  if (k < 1) throw std::domain_error("matrix_element: need k >= 1");
  if (n < k || n > n_total)
    throw std::domain_error("matrix_element: need k <= n <= N");
  return arm_overlap(n, k, loss.eta_a) *
         arm_overlap(n_total - n + k, k, loss.eta_b);
}

// ── build_cost_matrix ────────────────────────────────────────────────────────
// Assemble the banded matrix for the given photon number, loss model and
// cost.  Band k entry at columns (n−k, n) is (−c_k)·matrix_element(N,n,k).
// Assembly is O(N²) per band via shared per-arm overlap tables.
inline CostMatrix build_cost_matrix(int n_total, const LossModel& loss,
                                    const CostSpec& cost) {
  if (n_total < 0)
    throw std::domain_error("build_cost_matrix: photon number must be >= 0");
  loss.validate();
  cost.validate();

  CostMatrix m;
  m.n_total = n_total;
  m.bandwidth = cost.bandwidth() < n_total ? cost.bandwidth() : n_total;
  m.bands.resize(static_cast<std::size_t>(m.bandwidth));

  for (int k = 1; k <= m.bandwidth; ++k) {
    auto& band = m.bands[static_cast<std::size_t>(k) - 1];
    band.assign(static_cast<std::size_t>(n_total - k) + 1, 0.0);
    const double ck = cost.coefficient(k);
    if (ck == 0.0) continue;
    // T_k(m, η) for every m this band touches, one table per arm.
    const auto t_a = detail::arm_overlap_table(n_total, k, loss.eta_a);
    const auto t_b = detail::arm_overlap_table(n_total, k, loss.eta_b);
    for (int n = k; n <= n_total; ++n) {
      band[static_cast<std::size_t>(n - k)] =
          (-ck) * t_a[static_cast<std::size_t>(n)] *
          t_b[static_cast<std::size_t>(n_total - n + k)];
    }
  }
  return m;
}

} // namespace lossphase
