/*
 * eigensolver.hpp — largest eigenpair of the banded cost matrix.
 *
 * The default cost gives a symmetric tridiagonal matrix with zero
 * diagonal; its largest eigenvalue is isolated by bisection on Sturm
 * sequence counts (certified, deterministic, no convergence hazard) and
 * the eigenvector follows from inverse iteration with a partially
 * pivoted tridiagonal LU factorization.  This path is immune to the
 * vanishing spectral gap of the lossless operator (≈ 3π²/N² at large N),
 * which would make power iteration impractically slow.
 *
 * Wider-band matrices (cost bandwidth K > 1) use shifted power
 * iteration: the spectrum lies in [−R, R] with R the maximum row sum, so
 * iterating with M + R·I makes the top eigenvalue strictly dominant.
 *
 * The matrices here are entrywise non-negative, so the dominant
 * eigenvector can be globally sign-fixed to be non-negative
 * (Perron–Frobenius); entries below 1e-14 in magnitude are clipped to
 * zero before the final normalization.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lossphase/cost_matrix.hpp"

namespace lossphase {

// ── EigenResult ──────────────────────────────────────────────────────────────
// lambda: largest eigenvalue; vector: unit-norm non-negative eigenvector;
// residual: ‖Mv − λv‖₂ of the returned pair; iterations: solver work
// counter (bisection steps + refinement passes, or power iterations);
// near_degenerate: set when the gap to the second eigenvalue falls below
// 10× the requested tolerance (certified only on the tridiagonal path —
// either vector of the near-degenerate pair may be returned then).
struct EigenResult {
  double lambda = 0.0;
  std::vector<double> vector;
  double residual = 0.0;
  std::int64_t iterations = 0;
  bool near_degenerate = false;
};

// Thrown when an iterative phase exhausts its iteration cap; carries the
// last observed residual for diagnostics.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& message, double last_residual)
      : std::runtime_error(message + " (last residual " +
                           std::to_string(last_residual) + ")"),
        last_residual_(last_residual) {}

  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

namespace detail {

inline constexpr double eigenvector_clip = 1e-14;
inline constexpr std::int64_t power_iteration_cap = 1000000;

// Number of eigenvalues of the zero-diagonal tridiagonal matrix (offdiag
// e) that are ≤ x, via the classic pivoted Sturm recurrence.
inline int sturm_count_below(const std::vector<double>& e, int dim, double x,
                             double pivmin) {
  int count = 0;
  double q = -x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q <= 0.0) ++count;
  for (int i = 1; i < dim; ++i) {
    const double ei = e[static_cast<std::size_t>(i) - 1];
    q = -x - ei * ei / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q <= 0.0) ++count;
  }
  return count;
}

// Smallest x (to bisection accuracy) with at least `target` eigenvalues
// ≤ x; with target = dim this brackets the largest eigenvalue.
inline double bisect_eigenvalue(const std::vector<double>& e, int dim,
                                int target, double pivmin,
                                std::int64_t& iterations) {
  // Gershgorin enclosure (zero diagonal).
  double radius = 0.0;
  for (int i = 0; i < dim; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(e[static_cast<std::size_t>(i) - 1]);
    if (i < dim - 1) r += std::abs(e[static_cast<std::size_t>(i)]);
    radius = std::max(radius, r);
  }
  double lo = -radius - 2.0 * pivmin - 1e-14 * (radius + 1.0);
  double hi = radius + 2.0 * pivmin + 1e-14 * (radius + 1.0);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < 210; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (hi - lo <=
        4.0 * eps * std::max(std::abs(lo), std::abs(hi)) + 2.0 * pivmin)
      break;
    ++iterations;
    if (sturm_count_below(e, dim, mid, pivmin) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Partially pivoted LU factorization of the shifted tridiagonal matrix
// T − λI (dl/d/du overwritten, du2 = fill-in band, ipiv row swaps), then
// in-place solves.  Follows the standard gttrf/gtts2 scheme.
struct TridiagonalLU {
  std::vector<double> dl, d, du, du2;
  std::vector<int> ipiv;
  int n = 0;

  TridiagonalLU(const std::vector<double>& e, int dim, double shift,
                double pivot_floor)
      : dl(e.begin(), e.end()), d(static_cast<std::size_t>(dim), -shift),
        du(e.begin(), e.end()),
        du2(dim > 2 ? static_cast<std::size_t>(dim) - 2 : 0, 0.0),
        ipiv(static_cast<std::size_t>(dim)), n(dim) {
    for (int i = 0; i < n; ++i) ipiv[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < n - 1; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      if (std::abs(d[iu]) >= std::abs(dl[iu])) {
        if (d[iu] != 0.0) {
          const double fact = dl[iu] / d[iu];
          dl[iu] = fact;
          d[iu + 1] -= fact * du[iu];
        }
        if (i < n - 2) du2[iu] = 0.0;
      } else {
        const double fact = d[iu] / dl[iu];
        d[iu] = dl[iu];
        dl[iu] = fact;
        const double temp = du[iu];
        du[iu] = d[iu + 1];
        d[iu + 1] = temp - fact * d[iu + 1];
        if (i < n - 2) {
          du2[iu] = du[iu + 1];
          du[iu + 1] = -fact * du[iu + 1];
        }
        ipiv[iu] = i + 1;
      }
    }
    // Inverse iteration deliberately factors a (numerically) singular
    // matrix; floor tiny pivots so the solve stays finite.
    for (auto& pivot : d) {
      if (std::abs(pivot) < pivot_floor)
        pivot = pivot < 0.0 ? -pivot_floor : pivot_floor;
    }
  }

  void solve(std::vector<double>& b) const {
    for (int i = 0; i < n - 1; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      if (ipiv[iu] == i) {
        b[iu + 1] -= dl[iu] * b[iu];
      } else {
        const double temp = b[iu];
        b[iu] = b[iu + 1];
        b[iu + 1] = temp - dl[iu] * b[iu];
      }
    }
    const auto nu = static_cast<std::size_t>(n);
    b[nu - 1] /= d[nu - 1];
    if (n > 1) b[nu - 2] = (b[nu - 2] - du[nu - 2] * b[nu - 1]) / d[nu - 2];
    for (int i = n - 3; i >= 0; --i) {
      const auto iu = static_cast<std::size_t>(i);
      b[iu] = (b[iu] - du[iu] * b[iu + 1] - du2[iu] * b[iu + 2]) / d[iu];
    }
  }
};

inline double l2_norm(const std::vector<double>& v) {
  long double s = 0.0L;
  for (double x : v) s += static_cast<long double>(x) * x;
  return static_cast<double>(sqrtl(s));
}

inline void normalize(std::vector<double>& v) {
  const double nv = l2_norm(v);
  for (double& x : v) x /= nv;
}

// Global sign fix (largest-magnitude entry made positive), clipping of
// entries below the magnitude floor, and renormalization.
inline void sign_fix_and_clip(std::vector<double>& v) {
  std::size_t imax = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  if (v[imax] < 0.0)
    for (double& x : v) x = -x;
  for (double& x : v)
    if (std::abs(x) < eigenvector_clip) x = 0.0;
  normalize(v);
}

inline double residual_norm(const CostMatrix& m, const std::vector<double>& v,
                            double lambda) {
  std::vector<double> mv;
  m.apply(v, mv);
  long double s = 0.0L;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const long double r = static_cast<long double>(mv[i]) -
                          static_cast<long double>(lambda) * v[i];
    s += r * r;
  }
  return static_cast<double>(sqrtl(s));
}

inline EigenResult solve_tridiagonal(const CostMatrix& m, double tol) {
  const int dim = m.dim();
  const std::vector<double>& e = m.bands[0];

  double max_e2 = 0.0;
  for (double x : e) max_e2 = std::max(max_e2, x * x);
  const double pivmin =
      std::numeric_limits<double>::min() * std::max(1.0, max_e2);

  EigenResult result;
  result.lambda = bisect_eigenvalue(e, dim, dim, pivmin, result.iterations);
  const double lambda_second =
      bisect_eigenvalue(e, dim, dim - 1, pivmin, result.iterations);
  result.near_degenerate = (result.lambda - lambda_second) < 10.0 * tol;

  // Inverse iteration on T − λI.  The uniform positive start vector has
  // guaranteed overlap with the non-negative dominant eigenvector.
  double band_norm = 0.0;
  for (double x : e) band_norm = std::max(band_norm, std::abs(x));
  const double eps = std::numeric_limits<double>::epsilon();
  const double pivot_floor =
      std::max(eps * std::max(2.0 * band_norm, std::abs(result.lambda)),
               std::numeric_limits<double>::min() / eps);
  const TridiagonalLU lu(e, dim, result.lambda, pivot_floor);

  std::vector<double> v(static_cast<std::size_t>(dim),
                        1.0 / std::sqrt(static_cast<double>(dim)));
  double residual = std::numeric_limits<double>::infinity();
  for (int pass = 0; pass < 10; ++pass) {
    lu.solve(v);
    normalize(v);
    ++result.iterations;
    residual = residual_norm(m, v, result.lambda);
    if (residual <= tol) break;
  }
  if (residual > tol && !result.near_degenerate)
    throw ConvergenceError(
        "max_eigenpair: inverse iteration failed to reach tolerance",
        residual);

  sign_fix_and_clip(v);
  result.vector = std::move(v);
  result.residual = residual_norm(m, result.vector, result.lambda);
  return result;
}

inline EigenResult solve_power_iteration(const CostMatrix& m, double tol) {
  const int dim = m.dim();
  // Maximum row sum bounds the spectral radius; shifting by it makes the
  // largest eigenvalue of M + R·I strictly dominant in magnitude.
  std::vector<double> row_sum(static_cast<std::size_t>(dim), 0.0);
  for (int k = 1; k <= m.bandwidth; ++k) {
    const auto& band = m.bands[static_cast<std::size_t>(k) - 1];
    for (std::size_t i = 0; i < band.size(); ++i) {
      row_sum[i] += std::abs(band[i]);
      row_sum[i + static_cast<std::size_t>(k)] += std::abs(band[i]);
    }
  }
  const double shift = *std::max_element(row_sum.begin(), row_sum.end());

  EigenResult result;
  std::vector<double> v(static_cast<std::size_t>(dim),
                        1.0 / std::sqrt(static_cast<double>(dim)));
  std::vector<double> mv;
  double residual = std::numeric_limits<double>::infinity();
  for (std::int64_t it = 0; it < power_iteration_cap; ++it) {
    m.apply(v, mv);
    long double rho_acc = 0.0L;
    for (std::size_t i = 0; i < v.size(); ++i)
      rho_acc += static_cast<long double>(v[i]) * mv[i];
    const double rho = static_cast<double>(rho_acc);
    long double res_acc = 0.0L;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const long double r =
          static_cast<long double>(mv[i]) - static_cast<long double>(rho) * v[i];
      res_acc += r * r;
    }
    residual = static_cast<double>(sqrtl(res_acc));
    ++result.iterations;
    if (residual <= tol) {
      result.lambda = rho;
      sign_fix_and_clip(v);
      result.vector = std::move(v);
      result.residual = residual_norm(m, result.vector, result.lambda);
      return result;
    }
    for (std::size_t i = 0; i < v.size(); ++i) mv[i] += shift * v[i];
    const double ny = l2_norm(mv);
    if (ny == 0.0) break; // zero matrix; handled by caller's zero check
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mv[i] / ny;
  }
  throw ConvergenceError(
      "max_eigenpair: power iteration failed to reach tolerance within cap",
      residual);
}

} // namespace detail

// ── max_eigenpair ────────────────────────────────────────────────────────────
// Largest eigenvalue and unit-norm non-negative eigenvector of the banded
// cost matrix, with residual ‖Mv − λv‖₂ ≤ tol on success.  Tridiagonal
// matrices take the certified bisection path; wider bands use shifted
// power iteration (iteration cap 10⁶, ConvergenceError on exhaustion).
inline EigenResult max_eigenpair(const CostMatrix& m, double tol = 1e-12) {
  if (!(tol > 0.0))
    throw std::domain_error("max_eigenpair: tolerance must be positive");
  const int dim = m.dim();
  if (dim < 1)
    throw std::domain_error("max_eigenpair: matrix dimension must be >= 1");

  bool all_zero = true;
  for (const auto& band : m.bands)
    for (double x : band)
      if (x != 0.0) all_zero = false;

  if (dim == 1 || all_zero) {
    // Zero matrix: λ = 0 with a fully degenerate eigenspace; return the
    // uniform vector and flag degeneracy whenever it is genuine.
    EigenResult result;
    result.lambda = 0.0;
    result.vector.assign(static_cast<std::size_t>(dim),
                         1.0 / std::sqrt(static_cast<double>(dim)));
    result.residual = 0.0;
    result.near_degenerate = dim > 1;
    return result;
  }
  if (m.is_tridiagonal()) return detail::solve_tridiagonal(m, tol);
  return detail::solve_power_iteration(m, tol);
}

} // namespace lossphase
