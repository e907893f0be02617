/*
 * Loss-channel combinatorics, probe states, cost coefficients, and the
 * banded cost matrix.  Reference values are closed forms evaluated inline
 * or brute-force summations implemented independently in this file.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "lossphase/cost_matrix.hpp"
#include "lossphase/cost_spec.hpp"
#include "lossphase/loss_model.hpp"
#include "lossphase/probe_state.hpp"
#include "oracle_helpers.hpp"

using lossphase::LossModel;

namespace {

// Independent O(n) evaluation of the binomial loss distribution through
// the multiplicative recurrence B_{l+1} = B_l (n-l)/(l+1) (1-eta)/eta.
std::vector<long double> binomial_row_recurrence(int n, long double eta) {
  std::vector<long double> row(static_cast<std::size_t>(n) + 1);
  row[0] = std::pow(eta, static_cast<long double>(n));
  for (int l = 0; l < n; ++l)
    row[static_cast<std::size_t>(l) + 1] = row[l] *
                                           static_cast<long double>(n - l) /
                                           static_cast<long double>(l + 1) *
                                           (1.0L - eta) / eta;
  return row;
}

// Brute-force overlap factor: sum_l sqrt(B_l^m B_l^{m-k}) in long double.
long double arm_overlap_brute(int m, int k, long double eta) {
  const auto full = binomial_row_recurrence(m, eta);
  const auto kept = binomial_row_recurrence(m - k, eta);
  long double sum = 0.0L;
  for (int l = 0; l <= m - k; ++l) sum += std::sqrt(full[l] * kept[l]);
  return sum;
}

} // namespace

TEST_CASE("LossModel validates transmissions and reports structure") {
  REQUIRE_THROWS_AS(LossModel(-0.1, 0.5), std::domain_error);
  REQUIRE_THROWS_AS(LossModel(0.5, 1.2), std::domain_error);
  REQUIRE_THROWS_AS(LossModel(std::nan(""), 0.5), std::domain_error);

  const LossModel loss(0.3, 0.9);
  REQUIRE(loss.min_eta() == 0.3);
  REQUIRE_FALSE(loss.equal_arms());
  REQUIRE_FALSE(loss.lossless());
  REQUIRE(LossModel::equal(0.7).equal_arms());
  REQUIRE(LossModel::equal(1.0).lossless());
}

TEST_CASE("binomial_loss_prob matches closed forms at small n") {
  REQUIRE_THAT(lossphase::binomial_loss_prob(2, 1, 0.5),
               Catch::Matchers::WithinAbs(0.5, 1e-15));
  REQUIRE_THAT(lossphase::binomial_loss_prob(3, 1, 0.8),
               Catch::Matchers::WithinAbs(0.384, 1e-15));
  REQUIRE(lossphase::binomial_loss_prob(5, 0, 1.0) == 1.0);
  REQUIRE(lossphase::binomial_loss_prob(5, 5, 0.0) == 1.0);
  REQUIRE(lossphase::binomial_loss_prob(5, 3, 0.0) == 0.0);
  REQUIRE(lossphase::binomial_loss_prob(0, 0, 0.37) == 1.0);
}

TEST_CASE("binomial_loss_prob rejects invalid indices") {
  REQUIRE_THROWS_AS(lossphase::binomial_loss_prob(-1, 0, 0.5),
                    std::domain_error);
  REQUIRE_THROWS_AS(lossphase::binomial_loss_prob(3, -1, 0.5),
                    std::domain_error);
  REQUIRE_THROWS_AS(lossphase::binomial_loss_prob(3, 4, 0.5),
                    std::domain_error);
  REQUIRE_THROWS_AS(lossphase::binomial_loss_prob(3, 1, -0.1),
                    std::domain_error);
  REQUIRE_THROWS_AS(lossphase::binomial_loss_prob(3, 1, 1.1),
                    std::domain_error);
}

TEST_CASE("binomial_loss_prob rows are normalized far beyond the exact "
          "regime") {
  for (int n : {0, 1, 7, 30, 31, 100, 500, 2000}) {
    for (double eta : {0.3, 0.77}) {
      long double sum = 0.0L;
      for (int l = 0; l <= n; ++l)
        sum += lossphase::binomial_loss_prob(n, l, eta);
      REQUIRE_THAT(static_cast<double>(sum),
                   Catch::Matchers::WithinAbs(1.0, 1e-13));
    }
  }
}

TEST_CASE("binomial_loss_prob agrees with an independent recurrence") {
  for (int n : {10, 30, 31, 100}) {
    const auto oracle_row = binomial_row_recurrence(n, 0.7L);
    for (int l = 0; l <= n; ++l) {
      const double got = lossphase::binomial_loss_prob(n, l, 0.7);
      REQUIRE_THAT(got, Catch::Matchers::WithinRel(
                            static_cast<double>(oracle_row[l]), 1e-12));
    }
  }
}

TEST_CASE("binomial_loss_prob is symmetric under loss-survival exchange") {
  for (int n : {5, 23, 64}) {
    for (double eta : {0.2, 0.55, 0.9}) {
      for (int l = 0; l <= n; ++l) {
        REQUIRE_THAT(lossphase::binomial_loss_prob(n, l, eta),
                     Catch::Matchers::WithinRel(
                         lossphase::binomial_loss_prob(n, n - l, 1.0 - eta),
                         1e-12));
      }
    }
  }
}

TEST_CASE("beta_weight closed forms") {
  // Single photon in arm a, nothing lost: sqrt(B_0^1(eta)) = sqrt(eta).
  REQUIRE_THAT(lossphase::beta_weight(1, 1, 0, 0, LossModel(0.7, 1.0)),
               Catch::Matchers::WithinAbs(std::sqrt(0.7), 1e-15));
  // One photon per arm, one lost in each: sqrt(B_1^1(1/2) B_1^1(1/2)) = 1/2.
  REQUIRE_THAT(lossphase::beta_weight(2, 1, 1, 1, LossModel::equal(0.5)),
               Catch::Matchers::WithinAbs(0.5, 1e-15));
  // Lossless and nothing lost: weight 1 for any split.
  REQUIRE(lossphase::beta_weight(9, 4, 0, 0, LossModel::equal(1.0)) == 1.0);
}

TEST_CASE("beta_weight is symmetric under arm exchange") {
  const LossModel loss(0.35, 0.8);
  const LossModel swapped(0.8, 0.35);
  const int n_total = 11;
  for (int n = 0; n <= n_total; ++n)
    for (int l_a = 0; l_a <= n; ++l_a)
      for (int l_b = 0; l_b <= n_total - n; ++l_b)
        REQUIRE(lossphase::beta_weight(n_total, n, l_a, l_b, loss) ==
                lossphase::beta_weight(n_total, n_total - n, l_b, l_a,
                                       swapped));
}

TEST_CASE("beta_weight rejects index violations") {
  const LossModel loss(0.5, 0.5);
  REQUIRE_THROWS_AS(lossphase::beta_weight(3, 4, 0, 0, loss),
                    std::domain_error);
  REQUIRE_THROWS_AS(lossphase::beta_weight(3, 2, 3, 0, loss),
                    std::domain_error);
  REQUIRE_THROWS_AS(lossphase::beta_weight(3, 2, 0, 2, loss),
                    std::domain_error);
  REQUIRE_THROWS_AS(lossphase::beta_weight(3, -1, 0, 0, loss),
                    std::domain_error);
}

TEST_CASE("survival weights are a probability distribution") {
  REQUIRE_THAT(
      lossphase::survival_normalization_check(10, 4, LossModel(0.6, 0.9)),
      Catch::Matchers::WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(
      lossphase::survival_normalization_check(0, 0, LossModel(0.2, 0.9)),
      Catch::Matchers::WithinAbs(1.0, 1e-15));
  // Large-N path through the log-domain binomials.
  REQUIRE_THAT(
      lossphase::survival_normalization_check(200, 100, LossModel::equal(0.8)),
      Catch::Matchers::WithinAbs(1.0, 1e-10));
  // Randomized spot checks across the index range.
  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const LossModel loss(unit(gen), unit(gen));
    const int n = static_cast<int>(gen() % 138);
    const int split = static_cast<int>(gen() % (n + 1));
    REQUIRE_THAT(lossphase::survival_normalization_check(n, split, loss),
                 Catch::Matchers::WithinAbs(1.0, 1e-11));
  }
}

TEST_CASE("lossless_sine_state matches the closed form") {
  const auto s0 = lossphase::lossless_sine_state(0);
  REQUIRE(s0.amplitudes == std::vector<double>{1.0});

  const auto s1 = lossphase::lossless_sine_state(1);
  REQUIRE_THAT(s1.amplitudes[0],
               Catch::Matchers::WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  REQUIRE_THAT(s1.amplitudes[1],
               Catch::Matchers::WithinAbs(1.0 / std::sqrt(2.0), 1e-15));

  const auto s2 = lossphase::lossless_sine_state(2);
  REQUIRE_THAT(s2.amplitudes[0], Catch::Matchers::WithinAbs(0.5, 1e-15));
  REQUIRE_THAT(s2.amplitudes[1],
               Catch::Matchers::WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  REQUIRE_THAT(s2.amplitudes[2], Catch::Matchers::WithinAbs(0.5, 1e-15));
}

TEST_CASE("lossless_sine_state is normalized and strictly positive") {
  for (int n : {1, 2, 3, 10, 100, 1000, 5000}) {
    const auto state = lossphase::lossless_sine_state(n);
    REQUIRE(state.n_total == n);
    long double norm_sq = 0.0L;
    for (double a : state.amplitudes) {
      REQUIRE(a > 0.0);
      norm_sq += static_cast<long double>(a) * a;
    }
    REQUIRE_THAT(static_cast<double>(norm_sq),
                 Catch::Matchers::WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("sine-state peakedness follows the 3/(2(N+2)) law") {
  for (int n : {1, 2, 10, 100}) {
    REQUIRE_THAT(
        lossphase::inverse_participation_ratio(lossphase::lossless_sine_state(n)),
        Catch::Matchers::WithinAbs(1.5 / (n + 2), 1e-12));
  }
}

TEST_CASE("ProbeState validation") {
  REQUIRE_NOTHROW(lossphase::ProbeState{}.validate());
  REQUIRE(lossphase::ProbeState{}.amplitudes == std::vector<double>{1.0});

  // The converting constructor validates eagerly.
  REQUIRE_THROWS_AS(lossphase::ProbeState(2, {0.6, 0.8}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(lossphase::ProbeState(1, {0.6, 0.6}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(lossphase::ProbeState(-1, {1.0}), std::domain_error);
}

TEST_CASE("arm_overlap closed forms and edges") {
  // k = 0 collapses to the binomial normalization.
  REQUIRE(lossphase::arm_overlap(17, 0, 0.43) == 1.0);
  REQUIRE(lossphase::arm_overlap(0, 0, 0.0) == 1.0);
  // Lossless overlap is exactly 1 for any k.
  REQUIRE(lossphase::arm_overlap(9, 3, 1.0) == 1.0);
  // Full loss kills every coherence.
  REQUIRE(lossphase::arm_overlap(9, 3, 0.0) == 0.0);
  // m = k keeps only l = 0: sqrt(eta^m).
  REQUIRE_THAT(lossphase::arm_overlap(4, 4, 0.6),
               Catch::Matchers::WithinAbs(std::pow(0.6, 2.0), 1e-15));
  REQUIRE_THROWS_AS(lossphase::arm_overlap(3, 4, 0.5), std::domain_error);
  REQUIRE_THROWS_AS(lossphase::arm_overlap(-1, 0, 0.5), std::domain_error);
}

TEST_CASE("arm_overlap matches brute-force summation") {
  for (int m : {1, 2, 7, 33, 60}) {
    for (int k : {1, 2, 3}) {
      if (k > m) continue;
      for (double eta : {0.15, 0.5, 0.92}) {
        REQUIRE_THAT(
            lossphase::arm_overlap(m, k, eta),
            Catch::Matchers::WithinRel(
                static_cast<double>(arm_overlap_brute(m, k, eta)), 1e-13));
      }
    }
  }
}

TEST_CASE("CostSpec default and validation") {
  const auto cost = lossphase::CostSpec::default_cost();
  REQUIRE(cost.c0 == 2.0);
  REQUIRE(cost.bandwidth() == 1);
  REQUIRE(cost.coefficient(0) == 2.0);
  REQUIRE(cost.coefficient(1) == -1.0);
  REQUIRE(cost.coefficient(5) == 0.0);
  REQUIRE_THROWS_AS(cost.coefficient(-1), std::domain_error);
  REQUIRE_NOTHROW(cost.validate());

  // c(0) = 0 for the default cost; c(pi) = 4.
  REQUIRE_THAT(cost.evaluate(0.0), Catch::Matchers::WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(cost.evaluate(M_PI), Catch::Matchers::WithinAbs(4.0, 1e-15));

  lossphase::CostSpec positive_band{2.0, {0.5}};
  REQUIRE_THROWS_AS(positive_band.validate(), std::invalid_argument);
  lossphase::CostSpec negative_at_zero{2.0, {-2.0}};
  REQUIRE_THROWS_AS(negative_at_zero.validate(), std::invalid_argument);
  lossphase::CostSpec two_bands{2.0, {-0.6, -0.2}};
  REQUIRE_NOTHROW(two_bands.validate());
  REQUIRE(two_bands.bandwidth() == 2);
}

TEST_CASE("matrix_element closed forms") {
  REQUIRE_THAT(lossphase::matrix_element(1, 1, 1, LossModel(0.36, 0.81)),
               Catch::Matchers::WithinAbs(0.54, 1e-15));
  // Two photons in arm a, one lossy arm: eta^{3/2} + (1-eta) sqrt(2 eta).
  const double eta = 0.5;
  REQUIRE_THAT(lossphase::matrix_element(2, 2, 1, LossModel(eta, 1.0)),
               Catch::Matchers::WithinAbs(
                   std::pow(eta, 1.5) + (1.0 - eta) * std::sqrt(2.0 * eta),
                   1e-15));
  // Lossless: every first-band element is exactly 1.
  for (int n_total : {1, 4, 9})
    for (int n = 1; n <= n_total; ++n)
      REQUIRE(lossphase::matrix_element(n_total, n, 1, LossModel::equal(1.0)) ==
              1.0);
  REQUIRE_THROWS_AS(lossphase::matrix_element(3, 2, 0, LossModel::equal(0.5)),
                    std::domain_error);
  REQUIRE_THROWS_AS(lossphase::matrix_element(3, 2, 3, LossModel::equal(0.5)),
                    std::domain_error);
  REQUIRE_THROWS_AS(lossphase::matrix_element(3, 4, 1, LossModel::equal(0.5)),
                    std::domain_error);
}

TEST_CASE("matrix_element equals the direct double sum over loss patterns") {
  const int n_total = 9;
  const LossModel loss(0.37, 0.73);
  for (int k = 1; k <= 3; ++k) {
    for (int n = k; n <= n_total; ++n) {
      long double direct = 0.0L;
      for (int l_a = 0; l_a <= n - k; ++l_a)
        for (int l_b = 0; l_b <= n_total - n; ++l_b)
          direct += static_cast<long double>(
                        lossphase::beta_weight(n_total, n, l_a, l_b, loss)) *
                    lossphase::beta_weight(n_total, n - k, l_a, l_b, loss);
      REQUIRE_THAT(lossphase::matrix_element(n_total, n, k, loss),
                   Catch::Matchers::WithinRel(static_cast<double>(direct),
                                              1e-12));
    }
  }
}

TEST_CASE("matrix_element is symmetric under arm exchange") {
  const int n_total = 7;
  const LossModel loss(0.44, 0.91);
  const LossModel swapped(0.91, 0.44);
  for (int k = 1; k <= 2; ++k)
    for (int n = k; n <= n_total; ++n)
      REQUIRE_THAT(lossphase::matrix_element(n_total, n, k, loss),
                   Catch::Matchers::WithinAbs(
                       lossphase::matrix_element(n_total, n_total - n + k, k,
                                                 swapped),
                       1e-15));
}

TEST_CASE("build_cost_matrix closed forms") {
  const auto cost = lossphase::CostSpec::default_cost();

  const auto m1 =
      lossphase::build_cost_matrix(1, LossModel::equal(0.8), cost);
  REQUIRE(m1.dim() == 2);
  REQUIRE(m1.bandwidth == 1);
  REQUIRE_THAT(m1.band_entry(1, 0), Catch::Matchers::WithinAbs(0.8, 1e-15));

  const auto m3 =
      lossphase::build_cost_matrix(3, LossModel::equal(1.0), cost);
  for (int i = 0; i + 1 < m3.dim(); ++i)
    REQUIRE(m3.band_entry(1, i) == 1.0);

  // One lossy arm at N = 2: band (sqrt(eta), eta^{3/2} + (1-eta) sqrt(2 eta)).
  const double eta = 0.5;
  const auto m2 = lossphase::build_cost_matrix(2, LossModel(eta, 1.0), cost);
  REQUIRE_THAT(m2.band_entry(1, 0),
               Catch::Matchers::WithinAbs(std::sqrt(eta), 1e-15));
  REQUIRE_THAT(m2.band_entry(1, 1),
               Catch::Matchers::WithinAbs(
                   std::pow(eta, 1.5) + (1.0 - eta) * std::sqrt(2.0 * eta),
                   1e-15));

  REQUIRE_THROWS_AS(
      lossphase::build_cost_matrix(2, LossModel::equal(0.5),
                                   lossphase::CostSpec{2.0, {0.25}}),
      std::invalid_argument);
}

TEST_CASE("CostMatrix bandwidth is clipped and zero bands stay zero") {
  lossphase::CostSpec wide{2.0, {-0.5, 0.0, -0.1, -0.05, -0.01}};
  const auto m = lossphase::build_cost_matrix(2, LossModel::equal(0.9), wide);
  REQUIRE(m.bandwidth == 2); // requested 5, clipped to N
  REQUIRE(m.band_entry(2, 0) == 0.0); // c_2 = 0
  REQUIRE(m.band_entry(1, 0) > 0.0);
  REQUIRE(m.is_tridiagonal() == false);
  REQUIRE(m.band_entry(5, 0) == 0.0); // outside the band
}

TEST_CASE("CostMatrix apply and quadratic_form agree with dense algebra") {
  std::mt19937_64 gen(99);
  lossphase::CostSpec wide{2.0, {-0.6, -0.2}};
  const auto m = lossphase::build_cost_matrix(12, LossModel(0.65, 0.85), wide);
  const auto dense = oracle::to_dense(m);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = oracle::random_state(gen, 12);
    std::vector<double> y(x.size());
    m.apply(x, y);
    long double quad = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) {
      long double row = 0.0L;
      for (std::size_t j = 0; j < x.size(); ++j)
        row += static_cast<long double>(dense[i][j]) * x[j];
      REQUIRE_THAT(y[i], Catch::Matchers::WithinAbs(
                             static_cast<double>(row), 1e-13));
      quad += static_cast<long double>(x[i]) * row;
    }
    REQUIRE_THAT(m.quadratic_form(x),
                 Catch::Matchers::WithinAbs(static_cast<double>(quad),
                                            1e-13));
  }
}
