/*
 * loss_model.hpp — photon-loss channel combinatorics for a two-mode
 * interferometer.
 *
 * Each arm of the interferometer transmits a photon with probability η
 * (power transmission); losing l photons out of n follows the binomial
 * law  B_l^n(η) = C(n,l) (1−η)^l η^{n−l}.  A two-mode Fock component
 * |n, N−n⟩ that loses (l_a, l_b) photons carries the amplitude weight
 *
 *     β_n^{l_a,l_b} = √( B_{l_a}^n(η_a) · B_{l_b}^{N−n}(η_b) ).
 *
 * Everything downstream (cost matrix, outcome density, bounds) is built
 * from these weights.  The conditional post-loss states are never stored;
 * only the weights enter the formulas.
 *
 * Numerical strategy: binomials are evaluated exactly for n ≤ 30 and in
 * the log domain via log-gamma above that, so the channel stays usable
 * far beyond the n ≈ 1030 overflow point of naive 64-bit evaluation.
 * Log-gamma is taken in extended precision: the exponent reaches ~1e4 at
 * n ~ 2000, where double-precision log-gamma alone would already cost
 * ~1e-12 of relative accuracy in the weight.
 */

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace lossphase {

// ── LossModel ────────────────────────────────────────────────────────────────
// Power transmissions of the two interferometer arms, each in [0, 1].
// η = 1 means a lossless arm, η = 0 an opaque one.
struct LossModel {
  double eta_a;
  double eta_b;

  LossModel(double transmission_a, double transmission_b)
      : eta_a(transmission_a), eta_b(transmission_b) {
    validate();
  }

  // Both arms share one transmission value.
  static LossModel equal(double eta) { return LossModel(eta, eta); }

  void validate() const {
    if (!(eta_a >= 0.0 && eta_a <= 1.0))
      throw std::domain_error("LossModel: eta_a must lie in [0, 1]");
    if (!(eta_b >= 0.0 && eta_b <= 1.0))
      throw std::domain_error("LossModel: eta_b must lie in [0, 1]");
  }

  bool equal_arms() const { return eta_a == eta_b; }
  bool lossless() const { return eta_a == 1.0 && eta_b == 1.0; }
  double min_eta() const { return eta_a < eta_b ? eta_a : eta_b; }
};

namespace detail {

// Table of log-factorials lf[i] = ln(i!), i = 0..n_max, in extended
// precision.  Shared by the table-driven assembly routines so that the
// per-entry cost of a binomial is a handful of flops, not three lgamma
// calls.
inline std::vector<long double> log_factorial_table(int n_max) {
  std::vector<long double> lf(static_cast<std::size_t>(n_max) + 1);
  lf[0] = 0.0L;
  for (int i = 1; i <= n_max; ++i)
    lf[static_cast<std::size_t>(i)] =
        lgammal(static_cast<long double>(i) + 1.0L);
  return lf;
}

// ln B_l^n(η) for 0 < η < 1, using a shared log-factorial table.
inline long double log_binomial_loss(int n, int l,
                                     long double log_eta,
                                     long double log_one_minus_eta,
                                     const std::vector<long double>& lf) {
  return lf[static_cast<std::size_t>(n)] - lf[static_cast<std::size_t>(l)] -
         lf[static_cast<std::size_t>(n - l)] +
         static_cast<long double>(l) * log_one_minus_eta +
         static_cast<long double>(n - l) * log_eta;
}

// Exact binomial coefficient as a double; safe for n ≤ 30 where every
// C(n,l) is below 2^53 and therefore exactly representable.
inline double small_binomial_coefficient(int n, int l) {
  if (l > n - l) l = n - l;
  double c = 1.0;
  for (int i = 1; i <= l; ++i)
    c = c * static_cast<double>(n - l + i) / static_cast<double>(i);
  return c;
}

} // namespace detail

// ── binomial_loss_prob ───────────────────────────────────────────────────────
// Probability of losing exactly l photons out of n in an arm with power
// transmission η:  B_l^n(η) = C(n,l) (1−η)^l η^{n−l}.
//
// Exact small-integer arithmetic for n ≤ 30; log-gamma / log-domain
// evaluation above.  η ∈ {0, 1} are handled exactly (0^0 = 1 convention:
// B_l^n(0) = δ_{l,n}, B_l^n(1) = δ_{l,0}).
inline double binomial_loss_prob(int n, int l, double eta) {
  if (l < 0 || l > n)
    throw std::domain_error("binomial_loss_prob: need 0 <= l <= n");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::domain_error("binomial_loss_prob: eta must lie in [0, 1]");
  if (eta == 1.0) return l == 0 ? 1.0 : 0.0;
  if (eta == 0.0) return l == n ? 1.0 : 0.0;
  if (n <= 30) {
    return detail::small_binomial_coefficient(n, l) *
           std::pow(1.0 - eta, static_cast<double>(l)) *
           std::pow(eta, static_cast<double>(n - l));
  }
  const long double log_eta = logl(static_cast<long double>(eta));
  const long double log_1m = log1pl(-static_cast<long double>(eta));
  const long double log_c = lgammal(static_cast<long double>(n) + 1.0L) -
                            lgammal(static_cast<long double>(l) + 1.0L) -
                            lgammal(static_cast<long double>(n - l) + 1.0L);
  return static_cast<double>(
      expl(log_c + static_cast<long double>(l) * log_1m +
           static_cast<long double>(n - l) * log_eta));
}

// ── beta_weight ──────────────────────────────────────────────────────────────
// Amplitude weight of the component |n, N−n⟩ after losing (l_a, l_b)
// photons from arms (a, b):
//
//     β_n^{l_a,l_b} = √( B_{l_a}^n(η_a) · B_{l_b}^{N−n}(η_b) ).
//
// Non-negative; for fixed n the squares sum to one over all (l_a, l_b).
inline double beta_weight(int n_total, int n, int l_a, int l_b,
                          const LossModel& loss) {
  if (n < 0 || n > n_total)
    throw std::domain_error("beta_weight: need 0 <= n <= N");
  if (l_a < 0 || l_a > n)
    throw std::domain_error("beta_weight: need 0 <= l_a <= n");
  if (l_b < 0 || l_b > n_total - n)
    throw std::domain_error("beta_weight: need 0 <= l_b <= N - n");
  return std::sqrt(binomial_loss_prob(n, l_a, loss.eta_a) *
                   binomial_loss_prob(n_total - n, l_b, loss.eta_b));
}

// ── survival_normalization_check ─────────────────────────────────────────────
// Consistency probe: Σ_{l_a,l_b} β_n^{l_a,l_b}² over the full loss support,
// which must equal 1 for every n (the loss channel is trace preserving).
// Used by tests; evaluates the sum literally.
inline double survival_normalization_check(int n_total, int n,
                                           const LossModel& loss) {
  if (n < 0 || n > n_total)
    throw std::domain_error("survival_normalization_check: need 0 <= n <= N");
  long double total = 0.0L;
  for (int l_a = 0; l_a <= n; ++l_a) {
    for (int l_b = 0; l_b <= n_total - n; ++l_b) {
      const double b = beta_weight(n_total, n, l_a, l_b, loss);
      total += static_cast<long double>(b) * static_cast<long double>(b);
    }
  }
  return static_cast<double>(total);
}

// ── arm_overlap ──────────────────────────────────────────────────────────────
// Loss-channel coherence factor of one arm between Fock levels m and m−k:
//
//     T_k(m, η) = Σ_{l=0}^{m−k} √( B_l^m(η) · B_l^{m−k}(η) ),
//
// i.e. the overlap the channel leaves between amplitudes k photons apart.
// T_0(m, η) = 1 exactly; T_k(m, 1) = 1; T_k(m, 0) = δ_{k,0}.
//
// This factor is the building block of the banded cost matrix: because the
// two arms lose photons independently, every double sum over (l_a, l_b)
// factorizes into a product of one arm_overlap per arm.
inline double arm_overlap(int m, int k, double eta) {
  if (k < 0 || k > m)
    throw std::domain_error("arm_overlap: need 0 <= k <= m");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::domain_error("arm_overlap: eta must lie in [0, 1]");
  if (eta == 1.0) return 1.0;
  if (eta == 0.0) return k == 0 ? 1.0 : 0.0;
  if (k == 0) return 1.0; // Σ_l B_l^m(η) = 1 exactly
  if (m == k) {
    // Single l = 0 term: √(B_0^m(η) · B_0^0) = η^{m/2}.
    return std::pow(eta, 0.5 * static_cast<double>(m));
  }
  const auto lf = detail::log_factorial_table(m);
  const long double log_eta = logl(static_cast<long double>(eta));
  const long double log_1m = log1pl(-static_cast<long double>(eta));
  long double sum = 0.0L;
  for (int l = 0; l <= m - k; ++l) {
    const long double lb_m =
        detail::log_binomial_loss(m, l, log_eta, log_1m, lf);
    const long double lb_mk =
        detail::log_binomial_loss(m - k, l, log_eta, log_1m, lf);
    sum += expl(0.5L * (lb_m + lb_mk));
  }
  return static_cast<double>(sum);
}

namespace detail {

// Tabulated arm_overlap(m, k, eta) for m = k..m_max (entries below m = k
// are zero-filled), sharing one log-factorial table.  O(m_max²) total.
inline std::vector<double> arm_overlap_table(int m_max, int k, double eta) {
  std::vector<double> t(static_cast<std::size_t>(m_max) + 1, 0.0);
  if (k > m_max) return t;
  if (eta == 1.0) {
    for (int m = k; m <= m_max; ++m) t[static_cast<std::size_t>(m)] = 1.0;
    return t;
  }
  if (eta == 0.0) {
    if (k == 0)
      for (int m = 0; m <= m_max; ++m) t[static_cast<std::size_t>(m)] = 1.0;
    return t;
  }
  if (k == 0) {
    for (int m = 0; m <= m_max; ++m) t[static_cast<std::size_t>(m)] = 1.0;
    return t;
  }
  const auto lf = log_factorial_table(m_max);
  const long double log_eta = logl(static_cast<long double>(eta));
  const long double log_1m = log1pl(-static_cast<long double>(eta));
  for (int m = k; m <= m_max; ++m) {
    long double sum = 0.0L;
    for (int l = 0; l <= m - k; ++l) {
      const long double lb_m = log_binomial_loss(m, l, log_eta, log_1m, lf);
      const long double lb_mk =
          log_binomial_loss(m - k, l, log_eta, log_1m, lf);
      sum += expl(0.5L * (lb_m + lb_mk));
    }
    t[static_cast<std::size_t>(m)] = static_cast<double>(sum);
  }
  return t;
}

} // namespace detail

} // namespace lossphase
