/*
 * probe_state.hpp — the two-mode N-photon probe state.
 *
 * A pure input state  |ψ⟩ = Σ_n α_n |n, N−n⟩  with real amplitudes α_n.
 * Real amplitudes are fully general here: the optimization problem is
 * invariant under rephasing of the Fock components, so the optimum can
 * always be chosen real and non-negative.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lossphase {

inline constexpr double state_norm_tolerance = 1e-12;

// ── ProbeState ───────────────────────────────────────────────────────────────
// Total photon number N and the amplitude vector (α_0, …, α_N).
struct ProbeState {
  int n_total = 0;
  std::vector<double> amplitudes;

  ProbeState() : amplitudes{1.0} {}

  ProbeState(int n, std::vector<double> alpha)
      : n_total(n), amplitudes(std::move(alpha)) {
    validate();
  }

  void validate() const {
    if (n_total < 0)
      throw std::domain_error("ProbeState: photon number must be >= 0");
    if (amplitudes.size() != static_cast<std::size_t>(n_total) + 1)
      throw std::invalid_argument(
          "ProbeState: amplitude vector must have N + 1 entries");
    const double n2 = norm_squared();
    if (std::abs(n2 - 1.0) > state_norm_tolerance)
      throw std::invalid_argument(
          "ProbeState: amplitudes are not normalized within 1e-12");
  }

  double norm_squared() const {
    long double s = 0.0L;
    for (double a : amplitudes)
      s += static_cast<long double>(a) * static_cast<long double>(a);
    return static_cast<double>(s);
  }
};

// ── lossless_sine_state ──────────────────────────────────────────────────────
// The optimal probe of the lossless interferometer:
//
//     α_n = √(2/(N+2)) · sin((n+1)π/(N+2)),
//
// the top eigenvector of the constant unit-band tridiagonal matrix, with
// eigenvalue 2cos(π/(N+2)).  Exactly normalized analytically; every entry
// is strictly positive.
inline ProbeState lossless_sine_state(int n_total) {
  if (n_total < 0)
    throw std::domain_error("lossless_sine_state: photon number must be >= 0");
  const double m = static_cast<double>(n_total) + 2.0;
  const double scale = std::sqrt(2.0 / m);
  std::vector<double> alpha(static_cast<std::size_t>(n_total) + 1);
  for (int n = 0; n <= n_total; ++n)
    alpha[static_cast<std::size_t>(n)] =
        scale * std::sin(static_cast<double>(n + 1) * M_PI / m);
  return ProbeState(n_total, std::move(alpha));
}

// ── inverse_participation_ratio ──────────────────────────────────────────────
// Peakedness measure Σ_n α_n⁴ of a normalized state: 1/(N+1) for the flat
// profile, →1 for a single-component state.  Loss drives the optimal
// probe toward larger values (more peaked profiles).
inline double inverse_participation_ratio(const ProbeState& state) {
  long double s = 0.0L;
  for (double a : state.amplitudes) {
    const long double a2 = static_cast<long double>(a) * a;
    s += a2 * a2;
  }
  return static_cast<double>(s);
}

} // namespace lossphase
