/*
 * cost_spec.hpp — symmetric cyclic cost functions in Fourier form.
 *
 * A deviation θ between true and estimated phase is penalized by
 *
 *     C(θ) = c_0 + 2 Σ_{k≥1} c_k cos(kθ),      c_k = c_{−k} ∈ ℝ,
 *
 * with finite support k ≤ K (the bandwidth).  Optimality of the covariant
 * seed measurement requires c_k ≤ 0 for k ≥ 1; we additionally require
 * C(0) ≥ 0 (the minimum of C, attained at θ = 0 when all c_k ≤ 0), which
 * keeps every average cost in [0, c_0].
 *
 * The default instance c_0 = 2, c_1 = −1 is the cyclic quadratic cost
 * C(θ) = 4 sin²(θ/2), which approaches θ² for small deviations.
 */

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lossphase {

// ── CostSpec ─────────────────────────────────────────────────────────────────
// Fourier coefficients of the cost: c0 plus the off-diagonal coefficients
// offdiag[k-1] = c_k for k = 1..K.
struct CostSpec {
  double c0 = 2.0;
  std::vector<double> offdiag{-1.0};

  // C(θ) = 4 sin²(θ/2): c0 = 2, c1 = −1.
  static CostSpec default_cost() { return CostSpec{}; }

  // Number of retained off-diagonal harmonics K (0 for a constant cost).
  int bandwidth() const { return static_cast<int>(offdiag.size()); }

  // Coefficient c_k (k = 0 returns c0; k beyond the support returns 0).
  double coefficient(int k) const {
    if (k < 0) throw std::domain_error("CostSpec: harmonic index must be >= 0");
    if (k == 0) return c0;
    if (k > bandwidth()) return 0.0;
    return offdiag[static_cast<std::size_t>(k) - 1];
  }

  void validate() const {
    double at_zero = c0;
    for (double ck : offdiag) {
      if (!(ck <= 0.0))
        throw std::invalid_argument(
            "CostSpec: off-diagonal coefficients must satisfy c_k <= 0");
      at_zero += 2.0 * ck;
    }
    if (at_zero < -1e-12)
      throw std::invalid_argument(
          "CostSpec: C(0) = c0 + 2 sum c_k must be non-negative");
  }

  // Evaluate C(θ).
  double evaluate(double theta) const {
    double value = c0;
    for (int k = 1; k <= bandwidth(); ++k)
      value += 2.0 * offdiag[static_cast<std::size_t>(k) - 1] *
               std::cos(static_cast<double>(k) * theta);
    return value;
  }
};

} // namespace lossphase
