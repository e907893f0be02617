/*
 * sweep.hpp — batched (N, loss) solves with stable tabular output.
 *
 * A sweep evaluates the full quantity set (optimal cost, finite-N bound,
 * classical benchmark, gain factor, optionally the probe profile) over
 * the cross product of photon numbers and loss configurations.  Solves
 * are pure and independent, so they are dispatched to a small worker
 * pool; rows are indexed up front and written in deterministic order, so
 * parallel output is byte-identical to serial output.
 *
 * CSV schema (one row per (N, loss) point, ascending N outermost):
 *
 *   N,eta_a,eta_b,cost_opt,dphi_opt,bound_finite,dphi_bound,
 *   cost_classical,dphi_classical,gain[,alpha_0,…,alpha_Nmax],error
 *
 * Inapplicable quantities (bounds at N = 0, classical benchmark with an
 * opaque arm, gain without a closed form) are empty fields.  A failure
 * of one point is recorded in its `error` field without aborting the
 * sweep.  Numbers carry 17 significant digits for exact round-tripping.
 */

#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lossphase/bounds.hpp"
#include "lossphase/classical.hpp"
#include "lossphase/loss_model.hpp"
#include "lossphase/optimizer.hpp"

namespace lossphase {

// Full-precision decimal rendering (17 significant digits).
inline std::string format_double(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return std::string(buffer);
}

// ── SweepConfig ──────────────────────────────────────────────────────────────
struct SweepConfig {
  std::vector<int> n_values;     // strictly increasing, each >= 0
  std::vector<LossModel> losses; // evaluated per N, in order
  bool with_profile = false;     // append amplitude columns
  double tol = 1e-12;
  int jobs = 1;

  void validate() const {
    if (n_values.empty())
      throw std::invalid_argument("SweepConfig: n_values must be non-empty");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
      if (n_values[i] < 0)
        throw std::invalid_argument("SweepConfig: photon numbers must be >= 0");
      if (i > 0 && n_values[i] <= n_values[i - 1])
        throw std::invalid_argument(
            "SweepConfig: n_values must be strictly increasing");
    }
    if (losses.empty())
      throw std::invalid_argument("SweepConfig: loss list must be non-empty");
    for (const auto& loss : losses) loss.validate();
    if (!(tol > 0.0))
      throw std::invalid_argument("SweepConfig: tolerance must be positive");
    if (jobs < 1)
      throw std::invalid_argument("SweepConfig: worker count must be >= 1");
  }

  int max_n() const {
    return n_values.empty() ? 0 : n_values.back(); // validated ascending
  }
};

// ── SweepRow ─────────────────────────────────────────────────────────────────
struct SweepRow {
  int n_total;
  LossModel loss;
  std::optional<double> cost_opt, dphi_opt;
  std::optional<double> bound_finite, dphi_bound;
  std::optional<double> cost_classical, dphi_classical;
  std::optional<double> gain;
  std::vector<double> profile; // filled when requested
  std::string error;           // non-empty if this point failed

  SweepRow(int n, const LossModel& l) : n_total(n), loss(l) {}
};

// One fully evaluated sweep point; never throws — failures land in
// row.error.
inline SweepRow compute_sweep_row(int n_total, const LossModel& loss,
                                  double tol, bool with_profile) {
  SweepRow row(n_total, loss);
  try {
    OptimalSolution solution =
        optimize(n_total, loss, CostSpec::default_cost(), tol);
    row.cost_opt = solution.avg_cost;
    row.dphi_opt = solution.dphi();
    if (with_profile) row.profile = solution.state.amplitudes;

    const double eta_min = loss.min_eta();
    if (n_total >= 1 && eta_min > 0.0) {
      row.bound_finite = finite_n_quantum_bound(n_total, eta_min);
      row.dphi_bound = std::sqrt(*row.bound_finite);
    }
    if (n_total >= 1 && loss.eta_a > 0.0 && loss.eta_b > 0.0) {
      const double tau = classical_optimal_tau(loss);
      row.cost_classical =
          classical_cost(static_cast<double>(n_total), loss, tau);
      row.dphi_classical = std::sqrt(*row.cost_classical);
    }
    if (eta_min < 1.0 &&
        (loss.equal_arms() || loss.eta_a == 1.0 || loss.eta_b == 1.0))
      row.gain = gain_factor(loss);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

// ── run_sweep ────────────────────────────────────────────────────────────────
// Evaluate every (N, loss) pair of the config (ascending N outermost,
// losses in listed order).  Worker threads pick tasks by index; output
// order is fixed by the task list, not completion time.
inline std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<std::pair<int, LossModel>> points;
  points.reserve(config.n_values.size() * config.losses.size());
  for (int n : config.n_values)
    for (const auto& loss : config.losses) points.emplace_back(n, loss);

  std::vector<SweepRow> rows;
  rows.reserve(points.size());
  for (const auto& [n, loss] : points) rows.emplace_back(n, loss);

  const int workers =
      config.jobs > static_cast<int>(points.size())
          ? static_cast<int>(points.size())
          : config.jobs;
  if (workers <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i)
      rows[i] = compute_sweep_row(points[i].first, points[i].second,
                                  config.tol, config.with_profile);
    return rows;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      rows[i] = compute_sweep_row(points[i].first, points[i].second,
                                  config.tol, config.with_profile);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return rows;
}

// ── CSV serialization ────────────────────────────────────────────────────────

namespace detail {

inline std::string csv_quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline std::string optional_field(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

} // namespace detail

inline std::string sweep_csv_header(const SweepConfig& config) {
  std::string header =
      "N,eta_a,eta_b,cost_opt,dphi_opt,bound_finite,dphi_bound,"
      "cost_classical,dphi_classical,gain";
  if (config.with_profile)
    for (int i = 0; i <= config.max_n(); ++i)
      header += ",alpha_" + std::to_string(i);
  header += ",error";
  return header;
}

// Resume key: the first three columns identify a sweep point.
inline std::string sweep_row_key(int n_total, const LossModel& loss) {
  return std::to_string(n_total) + "," + format_double(loss.eta_a) + "," +
         format_double(loss.eta_b);
}

inline std::string sweep_csv_row(const SweepRow& row,
                                 const SweepConfig& config) {
  std::string line = sweep_row_key(row.n_total, row.loss);
  line += "," + detail::optional_field(row.cost_opt);
  line += "," + detail::optional_field(row.dphi_opt);
  line += "," + detail::optional_field(row.bound_finite);
  line += "," + detail::optional_field(row.dphi_bound);
  line += "," + detail::optional_field(row.cost_classical);
  line += "," + detail::optional_field(row.dphi_classical);
  line += "," + detail::optional_field(row.gain);
  if (config.with_profile) {
    for (int i = 0; i <= config.max_n(); ++i) {
      line += ",";
      if (i < static_cast<int>(row.profile.size()))
        line += format_double(row.profile[static_cast<std::size_t>(i)]);
    }
  }
  line += "," + detail::csv_quote_if_needed(row.error);
  return line;
}

inline void write_sweep_csv(std::ostream& out, const SweepConfig& config,
                            const std::vector<SweepRow>& rows,
                            bool include_header = true) {
  if (include_header) out << sweep_csv_header(config) << "\n";
  for (const auto& row : rows) out << sweep_csv_row(row, config) << "\n";
}

// Read the keys of already-emitted rows from an existing sweep CSV; the
// header must match the expected schema exactly, otherwise resuming into
// the file would silently mix schemas.
inline std::set<std::string> read_sweep_keys(std::istream& in,
                                             const std::string& expected_header) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("sweep resume: existing file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected_header)
    throw std::runtime_error(
        "sweep resume: existing file header does not match the requested "
        "sweep schema");
  std::set<std::string> keys;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t pos = 0;
    int commas = 0;
    while (pos < line.size() && commas < 3) {
      if (line[pos] == ',') ++commas;
      ++pos;
    }
    if (commas == 3) keys.insert(line.substr(0, pos - 1));
  }
  return keys;
}

} // namespace lossphase
