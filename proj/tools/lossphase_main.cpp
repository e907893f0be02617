/*
 * lossphase — optimal quantum phase estimation under photon loss.
 *
 * Subcommands:
 *   optimal    single solve: optimal probe state and minimal average cost
 *   sweep      batched solves over photon numbers and loss configurations
 *   bounds     analytic lower bounds, majorizer, and gain factors
 *   classical  coherent-state benchmark cost and optimal input splitting
 *   simulate   Monte Carlo validation of the optimal covariant measurement
 *
 * Output is CSV (default) or JSON (`--format json`), to standard output
 * or to `--out <path>`.  CSV carries 17 significant digits; JSON wraps
 * every invocation as {config, rows, meta}.  Exit codes: 0 success,
 * 1 numerical/runtime failure, 2 usage error.
 */

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lossphase/lossphase.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::uint64_t default_seed = 20250814;

// ── Report plumbing ──────────────────────────────────────────────────────────

using Cell = std::variant<std::monostate, double, std::int64_t, std::uint64_t,
                          bool, std::string>;

struct Report {
  std::vector<std::pair<std::string, Cell>> fields;
  std::vector<double> profile;
  bool include_profile = false;

  void add(const std::string& key, Cell value) {
    fields.emplace_back(key, std::move(value));
  }
  void add_optional(const std::string& key, const std::optional<double>& v) {
    fields.emplace_back(key, v ? Cell(*v) : Cell(std::monostate{}));
  }
  void add_optional_int(const std::string& key, const std::optional<int>& v) {
    fields.emplace_back(key,
                        v ? Cell(static_cast<std::int64_t>(*v))
                          : Cell(std::monostate{}));
  }
};

std::string cell_to_csv(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return "";
  if (const auto* d = std::get_if<double>(&cell))
    return lossphase::format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&cell))
    return std::to_string(*i);
  if (const auto* u = std::get_if<std::uint64_t>(&cell))
    return std::to_string(*u);
  if (const auto* b = std::get_if<bool>(&cell)) return *b ? "1" : "0";
  return lossphase::detail::csv_quote_if_needed(std::get<std::string>(cell));
}

ordered_json cell_to_json(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return nullptr;
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  if (const auto* u = std::get_if<std::uint64_t>(&cell)) return *u;
  if (const auto* b = std::get_if<bool>(&cell)) return *b;
  return std::get<std::string>(cell);
}

std::string report_to_csv(const Report& report) {
  std::string header, values;
  bool first = true;
  for (const auto& [key, cell] : report.fields) {
    if (!first) {
      header += ",";
      values += ",";
    }
    header += key;
    values += cell_to_csv(cell);
    first = false;
  }
  if (report.include_profile) {
    for (std::size_t i = 0; i < report.profile.size(); ++i) {
      header += ",alpha_" + std::to_string(i);
      values += "," + lossphase::format_double(report.profile[i]);
    }
  }
  return header + "\n" + values + "\n";
}

ordered_json report_to_json_row(const Report& report) {
  ordered_json row;
  for (const auto& [key, cell] : report.fields) row[key] = cell_to_json(cell);
  if (report.include_profile) row["profile"] = report.profile;
  return row;
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

ordered_json make_meta(std::optional<double> tol,
                       std::optional<std::uint64_t> seed) {
  ordered_json meta;
  meta["version"] = lossphase::version_string;
  meta["tol"] = tol ? ordered_json(*tol) : ordered_json(nullptr);
  meta["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
  return meta;
}

void emit_report(const Report& report, const ordered_json& config,
                 const ordered_json& meta, const std::string& format,
                 const std::string& out_path) {
  if (format == "json") {
    ordered_json doc;
    doc["config"] = config;
    doc["rows"] = ordered_json::array({report_to_json_row(report)});
    doc["meta"] = meta;
    write_text(doc.dump(2) + "\n", out_path);
  } else {
    write_text(report_to_csv(report), out_path);
  }
}

// ── Shared option plumbing ───────────────────────────────────────────────────

struct EtaOptions {
  double eta_a = 1.0;
  double eta_b = 1.0;
  double eta_both = 1.0;
  CLI::Option* opt_both = nullptr;

  lossphase::LossModel loss() const {
    if (opt_both != nullptr && opt_both->count() > 0)
      return lossphase::LossModel::equal(eta_both);
    return {eta_a, eta_b};
  }
};

void add_eta_options(CLI::App* cmd, EtaOptions& eta) {
  auto* oa = cmd->add_option("--eta-a", eta.eta_a,
                             "power transmission of arm a (default 1)")
                 ->check(CLI::Range(0.0, 1.0));
  auto* ob = cmd->add_option("--eta-b", eta.eta_b,
                             "power transmission of arm b (default 1)")
                 ->check(CLI::Range(0.0, 1.0));
  eta.opt_both = cmd->add_option("--eta", eta.eta_both,
                                 "set both arms to one transmission")
                     ->check(CLI::Range(0.0, 1.0))
                     ->excludes(oa)
                     ->excludes(ob);
}

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "output format (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", out.out_path, "write output to a file");
}

int default_jobs() {
  if (const char* env = std::getenv("LOSSPHASE_JOBS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  const int jobs = hw == 0 ? 1 : static_cast<int>(hw);
  return jobs > 8 ? 8 : jobs;
}

// ── optimal ──────────────────────────────────────────────────────────────────

void run_optimal(int n_total, const lossphase::LossModel& loss, double tol,
                 bool with_profile, const OutputOptions& out) {
  const lossphase::OptimalSolution solution =
      lossphase::optimize(n_total, loss, lossphase::CostSpec::default_cost(),
                          tol);
  Report report;
  report.add("N", static_cast<std::int64_t>(n_total));
  report.add("eta_a", loss.eta_a);
  report.add("eta_b", loss.eta_b);
  report.add("lambda_max", solution.lambda_max);
  report.add("cost_opt", solution.avg_cost);
  report.add("dphi_opt", solution.dphi());
  report.add("residual", solution.residual);
  report.add("near_degenerate", solution.near_degenerate);
  if (with_profile) {
    report.include_profile = true;
    report.profile = solution.state.amplitudes;
  }

  ordered_json config;
  config["command"] = "optimal";
  config["N"] = n_total;
  config["eta_a"] = loss.eta_a;
  config["eta_b"] = loss.eta_b;
  config["tol"] = tol;
  config["profile"] = with_profile;
  emit_report(report, config, make_meta(tol, std::nullopt), out.format,
              out.out_path);
}

// ── bounds ───────────────────────────────────────────────────────────────────

void run_bounds(std::optional<int> n_total, const lossphase::LossModel& loss,
                bool gain_only, const OutputOptions& out) {
  Report report;
  ordered_json config;
  config["command"] = "bounds";

  if (gain_only || !n_total) {
    if (!gain_only)
      throw CLI::RequiredError("bounds: --n (or --gain for the gain factor "
                               "alone)");
    std::optional<double> gain;
    if (loss.min_eta() < 1.0 &&
        (loss.equal_arms() || loss.eta_a == 1.0 || loss.eta_b == 1.0))
      gain = lossphase::gain_factor(loss);
    report.add("eta_a", loss.eta_a);
    report.add("eta_b", loss.eta_b);
    report.add_optional("gain", gain);
    config["eta_a"] = loss.eta_a;
    config["eta_b"] = loss.eta_b;
    config["gain"] = true;
  } else {
    const lossphase::BoundReport bounds =
        lossphase::make_bound_report(*n_total, loss);
    report.add("N", static_cast<std::int64_t>(*n_total));
    report.add("eta_a", loss.eta_a);
    report.add("eta_b", loss.eta_b);
    report.add_optional("a_up", bounds.a_up);
    report.add_optional_int("argmax_n", bounds.argmax_n);
    report.add_optional("lambda_majorizer", bounds.majorizer_lambda);
    report.add_optional("bound_finite", bounds.finite_n_bound);
    report.add_optional("dphi_bound",
                        bounds.finite_n_bound
                            ? std::optional<double>(
                                  std::sqrt(*bounds.finite_n_bound))
                            : std::nullopt);
    report.add_optional("bound_asymptotic", bounds.asymptotic_bound);
    report.add_optional("cost_classical", bounds.classical_cost);
    report.add_optional("classical_tau", bounds.classical_tau);
    report.add_optional("gain", bounds.gain);
    config["N"] = *n_total;
    config["eta_a"] = loss.eta_a;
    config["eta_b"] = loss.eta_b;
  }
  emit_report(report, config, make_meta(std::nullopt, std::nullopt),
              out.format, out.out_path);
}

// ── classical ────────────────────────────────────────────────────────────────

void run_classical(std::optional<double> n_mean,
                   const lossphase::LossModel& loss,
                   std::optional<double> tau, bool tau_opt_only,
                   const OutputOptions& out) {
  Report report;
  ordered_json config;
  config["command"] = "classical";
  config["eta_a"] = loss.eta_a;
  config["eta_b"] = loss.eta_b;

  if (tau_opt_only) {
    const double tau_opt = lossphase::classical_optimal_tau(loss);
    report.add("eta_a", loss.eta_a);
    report.add("eta_b", loss.eta_b);
    report.add("tau_opt", tau_opt);
    config["tau_opt"] = true;
  } else {
    if (!n_mean)
      throw CLI::RequiredError("classical: --n (or --tau-opt for the "
                               "splitting alone)");
    const double tau_opt = lossphase::classical_optimal_tau(loss);
    const double tau_used = tau ? *tau : tau_opt;
    const double cost = lossphase::classical_cost(*n_mean, loss, tau_used);
    report.add("n_mean", *n_mean);
    report.add("eta_a", loss.eta_a);
    report.add("eta_b", loss.eta_b);
    report.add("tau", tau_used);
    report.add("tau_opt", tau_opt);
    report.add("cost_classical", cost);
    report.add("dphi_classical", std::sqrt(cost));
    config["n_mean"] = *n_mean;
    config["tau"] = tau_used;
  }
  emit_report(report, config, make_meta(std::nullopt, std::nullopt),
              out.format, out.out_path);
}

// ── simulate ─────────────────────────────────────────────────────────────────

void run_simulate(int n_total, const lossphase::LossModel& loss,
                  std::int64_t n_samples, std::uint64_t seed, double phase,
                  double tol, const OutputOptions& out) {
  const auto cost_spec = lossphase::CostSpec::default_cost();
  const lossphase::OptimalSolution solution =
      lossphase::optimize(n_total, loss, cost_spec, tol);
  const lossphase::OutcomeDensity density =
      lossphase::outcome_density(solution.state, loss);
  const double cost_exact = lossphase::expected_cost_exact(density, cost_spec);
  const lossphase::SimulationResult mc = lossphase::monte_carlo_cost(
      solution.state, loss, cost_spec, n_samples, seed, phase);
  const double z = mc.std_error > 0.0
                       ? (mc.mean_cost - cost_exact) / mc.std_error
                       : 0.0;

  Report report;
  report.add("N", static_cast<std::int64_t>(n_total));
  report.add("eta_a", loss.eta_a);
  report.add("eta_b", loss.eta_b);
  report.add("true_phase", phase);
  report.add("n_samples", static_cast<std::int64_t>(n_samples));
  report.add("seed", seed);
  report.add("cost_opt", solution.avg_cost);
  report.add("cost_exact", cost_exact);
  report.add("cost_mc", mc.mean_cost);
  report.add("std_error", mc.std_error);
  report.add("z_score", z);

  ordered_json config;
  config["command"] = "simulate";
  config["N"] = n_total;
  config["eta_a"] = loss.eta_a;
  config["eta_b"] = loss.eta_b;
  config["samples"] = n_samples;
  config["seed"] = seed;
  config["phase"] = phase;
  config["tol"] = tol;
  emit_report(report, config, make_meta(tol, seed), out.format, out.out_path);
}

// ── sweep ────────────────────────────────────────────────────────────────────

std::vector<int> log_spaced_values(int n_min, int n_max, int per_decade) {
  std::vector<int> values;
  double x = std::log10(static_cast<double>(n_min));
  const double step = 1.0 / static_cast<double>(per_decade);
  while (true) {
    const double v = std::pow(10.0, x);
    if (v > static_cast<double>(n_max) + 0.5) break;
    const int n = static_cast<int>(std::llround(v));
    if (n >= n_min && n <= n_max) values.push_back(n);
    x += step;
  }
  values.push_back(n_max);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

ordered_json sweep_row_to_json(const lossphase::SweepRow& row,
                               bool with_profile) {
  auto opt = [](const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
  };
  ordered_json j;
  j["N"] = row.n_total;
  j["eta_a"] = row.loss.eta_a;
  j["eta_b"] = row.loss.eta_b;
  j["cost_opt"] = opt(row.cost_opt);
  j["dphi_opt"] = opt(row.dphi_opt);
  j["bound_finite"] = opt(row.bound_finite);
  j["dphi_bound"] = opt(row.dphi_bound);
  j["cost_classical"] = opt(row.cost_classical);
  j["dphi_classical"] = opt(row.dphi_classical);
  j["gain"] = opt(row.gain);
  if (with_profile) j["profile"] = row.profile;
  j["error"] = row.error;
  return j;
}

void run_sweep_command(lossphase::SweepConfig config, bool resume,
                       const OutputOptions& out) {
  if (out.format == "json") {
    const auto rows = lossphase::run_sweep(config);
    ordered_json doc;
    ordered_json cfg;
    cfg["command"] = "sweep";
    cfg["n_values"] = config.n_values;
    ordered_json losses = ordered_json::array();
    for (const auto& loss : config.losses)
      losses.push_back({loss.eta_a, loss.eta_b});
    cfg["losses"] = losses;
    cfg["profile"] = config.with_profile;
    cfg["tol"] = config.tol;
    cfg["jobs"] = config.jobs;
    doc["config"] = cfg;
    doc["rows"] = ordered_json::array();
    for (const auto& row : rows)
      doc["rows"].push_back(sweep_row_to_json(row, config.with_profile));
    doc["meta"] = make_meta(config.tol, std::nullopt);
    write_text(doc.dump(2) + "\n", out.out_path);
    return;
  }

  const std::string header = lossphase::sweep_csv_header(config);

  if (resume) {
    std::ifstream existing(out.out_path);
    if (existing) {
      const auto done_keys = lossphase::read_sweep_keys(existing, header);
      existing.close();
      // Keep only the points that are not yet in the file.
      lossphase::SweepConfig remaining = config;
      std::vector<std::pair<int, lossphase::LossModel>> points;
      for (int n : config.n_values)
        for (const auto& loss : config.losses)
          if (done_keys.find(lossphase::sweep_row_key(n, loss)) ==
              done_keys.end())
            points.emplace_back(n, loss);
      if (points.empty()) return;
      std::vector<lossphase::SweepRow> rows;
      rows.reserve(points.size());
      {
        // Reuse the pool machinery by sweeping the remaining points as
        // a flat task list.
        std::vector<lossphase::SweepRow> computed;
        computed.reserve(points.size());
        for (const auto& [n, loss] : points) computed.emplace_back(n, loss);
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
          while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            computed[i] = lossphase::compute_sweep_row(
                points[i].first, points[i].second, config.tol,
                config.with_profile);
          }
        };
        const int workers = std::min<int>(config.jobs,
                                          static_cast<int>(points.size()));
        if (workers <= 1) {
          worker();
        } else {
          std::vector<std::thread> pool;
          for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
          for (auto& t : pool) t.join();
        }
        rows = std::move(computed);
      }
      std::ofstream append(out.out_path, std::ios::app);
      if (!append)
        throw std::runtime_error("cannot open output file: " + out.out_path);
      lossphase::write_sweep_csv(append, config, rows,
                                 /*include_header=*/false);
      return;
    }
    // No existing file: fall through to a fresh full run.
  }

  const auto rows = lossphase::run_sweep(config);
  std::ostringstream text;
  lossphase::write_sweep_csv(text, config, rows);
  write_text(text.str(), out.out_path);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"lossphase — optimal quantum phase estimation under photon "
               "loss"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lossphase::version_string);

  // optimal ------------------------------------------------------------------
  auto* cmd_optimal =
      app.add_subcommand("optimal", "optimal probe state and minimal cost");
  int opt_n = 0;
  double opt_tol = 1e-12;
  bool opt_profile = false;
  EtaOptions opt_eta;
  OutputOptions opt_out;
  cmd_optimal->add_option("--n", opt_n, "total photon number N")
      ->required()
      ->check(CLI::NonNegativeNumber);
  add_eta_options(cmd_optimal, opt_eta);
  cmd_optimal->add_option("--tol", opt_tol, "eigensolver tolerance")
      ->check(CLI::PositiveNumber);
  cmd_optimal->add_flag("--profile", opt_profile,
                        "include the optimal amplitude profile");
  add_output_options(cmd_optimal, opt_out);
  cmd_optimal->callback([&]() {
    run_optimal(opt_n, opt_eta.loss(), opt_tol, opt_profile, opt_out);
  });

  // sweep ----------------------------------------------------------------------
  auto* cmd_sweep = app.add_subcommand(
      "sweep", "batched solves over photon numbers and losses");
  std::vector<int> sweep_n;
  int sweep_n_min = 0, sweep_n_max = 0, sweep_per_decade = 24;
  std::vector<double> sweep_eta;
  double sweep_eta_a = 1.0, sweep_eta_b = 1.0;
  double sweep_tol = 1e-12;
  int sweep_jobs = default_jobs();
  bool sweep_profile = false, sweep_resume = false;
  OutputOptions sweep_out;
  auto* o_n = cmd_sweep->add_option("--n", sweep_n, "explicit photon numbers")
                  ->check(CLI::NonNegativeNumber);
  auto* o_nmin = cmd_sweep
                     ->add_option("--n-min", sweep_n_min,
                                  "start of a log-spaced photon-number range")
                     ->check(CLI::PositiveNumber)
                     ->excludes(o_n);
  auto* o_nmax = cmd_sweep
                     ->add_option("--n-max", sweep_n_max,
                                  "end of a log-spaced photon-number range")
                     ->check(CLI::PositiveNumber)
                     ->excludes(o_n)
                     ->needs(o_nmin);
  o_nmin->needs(o_nmax);
  cmd_sweep
      ->add_option("--per-decade", sweep_per_decade,
                   "log-spaced points per decade (default 24)")
      ->check(CLI::PositiveNumber);
  auto* o_etas =
      cmd_sweep
          ->add_option("--eta", sweep_eta,
                       "equal-arm transmissions (default 1.0 0.8 0.6)")
          ->check(CLI::Range(0.0, 1.0));
  auto* o_ea = cmd_sweep
                   ->add_option("--eta-a", sweep_eta_a,
                                "single unequal pair: arm a transmission")
                   ->check(CLI::Range(0.0, 1.0))
                   ->excludes(o_etas);
  auto* o_eb = cmd_sweep
                   ->add_option("--eta-b", sweep_eta_b,
                                "single unequal pair: arm b transmission")
                   ->check(CLI::Range(0.0, 1.0))
                   ->excludes(o_etas);
  cmd_sweep->add_flag("--profile", sweep_profile,
                      "append amplitude profile columns");
  cmd_sweep->add_option("--tol", sweep_tol, "eigensolver tolerance")
      ->check(CLI::PositiveNumber);
  cmd_sweep->add_option("--jobs", sweep_jobs,
                        "worker threads (default: LOSSPHASE_JOBS or cores)")
      ->check(CLI::PositiveNumber);
  auto* o_resume = cmd_sweep->add_flag(
      "--resume", sweep_resume,
      "extend an existing CSV output file, skipping finished rows");
  add_output_options(cmd_sweep, sweep_out);
  cmd_sweep->callback([&]() {
    lossphase::SweepConfig config;
    if (!sweep_n.empty()) {
      config.n_values = sweep_n;
      std::sort(config.n_values.begin(), config.n_values.end());
      config.n_values.erase(
          std::unique(config.n_values.begin(), config.n_values.end()),
          config.n_values.end());
    } else if (o_nmin->count() > 0) {
      if (sweep_n_max < sweep_n_min)
        throw CLI::ValidationError("--n-max", "must be >= --n-min");
      config.n_values =
          log_spaced_values(sweep_n_min, sweep_n_max, sweep_per_decade);
    } else {
      throw CLI::RequiredError("sweep: --n or --n-min/--n-max");
    }
    if (o_ea->count() > 0 || o_eb->count() > 0) {
      config.losses.emplace_back(sweep_eta_a, sweep_eta_b);
    } else if (!sweep_eta.empty()) {
      for (double eta : sweep_eta)
        config.losses.push_back(lossphase::LossModel::equal(eta));
    } else {
      for (double eta : {1.0, 0.8, 0.6})
        config.losses.push_back(lossphase::LossModel::equal(eta));
    }
    config.with_profile = sweep_profile;
    config.tol = sweep_tol;
    config.jobs = sweep_jobs;
    if (sweep_resume && sweep_out.out_path.empty())
      throw CLI::ValidationError("--resume", "requires --out");
    if (sweep_resume && sweep_out.format == "json")
      throw CLI::ValidationError("--resume", "supports CSV output only");
    (void)o_resume;
    run_sweep_command(std::move(config), sweep_resume, sweep_out);
  });

  // bounds ---------------------------------------------------------------------
  auto* cmd_bounds =
      app.add_subcommand("bounds", "analytic lower bounds and gain factors");
  int bounds_n = 0;
  bool bounds_gain = false, bounds_equal = false;
  EtaOptions bounds_eta;
  OutputOptions bounds_out;
  auto* o_bn = cmd_bounds->add_option("--n", bounds_n, "total photon number N")
                   ->check(CLI::NonNegativeNumber);
  add_eta_options(cmd_bounds, bounds_eta);
  cmd_bounds->add_flag("--gain", bounds_gain,
                       "report the asymptotic gain factor only (no --n "
                       "needed)");
  cmd_bounds->add_flag("--equal-arms", bounds_equal,
                       "assert equal arms (the tighter equal-arm asymptote "
                       "is selected automatically when arms match)");
  add_output_options(cmd_bounds, bounds_out);
  cmd_bounds->callback([&]() {
    const auto loss = bounds_eta.loss();
    if (bounds_equal && !loss.equal_arms())
      throw CLI::ValidationError("--equal-arms",
                                 "requires eta_a == eta_b");
    std::optional<int> n;
    if (o_bn->count() > 0) n = bounds_n;
    run_bounds(n, loss, bounds_gain, bounds_out);
  });

  // classical ------------------------------------------------------------------
  auto* cmd_classical = app.add_subcommand(
      "classical", "coherent-state benchmark cost and splitting");
  double classical_n = 0.0, classical_tau = 0.5;
  bool classical_tau_opt = false;
  EtaOptions classical_eta;
  OutputOptions classical_out;
  auto* o_cn =
      cmd_classical
          ->add_option("--n", classical_n, "mean photon number (real)")
          ->check(CLI::PositiveNumber);
  auto* o_tau = cmd_classical
                    ->add_option("--tau", classical_tau,
                                 "input splitting (default: optimal)")
                    ->check(CLI::Range(0.0, 1.0));
  cmd_classical->add_flag("--tau-opt", classical_tau_opt,
                          "report the optimal splitting only (no --n needed)");
  add_eta_options(cmd_classical, classical_eta);
  add_output_options(cmd_classical, classical_out);
  cmd_classical->callback([&]() {
    std::optional<double> n_mean;
    if (o_cn->count() > 0) n_mean = classical_n;
    std::optional<double> tau;
    if (o_tau->count() > 0) tau = classical_tau;
    run_classical(n_mean, classical_eta.loss(), tau, classical_tau_opt,
                  classical_out);
  });

  // simulate -------------------------------------------------------------------
  auto* cmd_simulate = app.add_subcommand(
      "simulate", "Monte Carlo validation of the optimal measurement");
  int sim_n = 0;
  std::int64_t sim_samples = 100000;
  std::uint64_t sim_seed = default_seed;
  double sim_phase = 0.0, sim_tol = 1e-12;
  EtaOptions sim_eta;
  OutputOptions sim_out;
  cmd_simulate->add_option("--n", sim_n, "total photon number N")
      ->required()
      ->check(CLI::NonNegativeNumber);
  add_eta_options(cmd_simulate, sim_eta);
  cmd_simulate->add_option("--samples", sim_samples, "number of Monte Carlo "
                                                     "samples")
      ->check(CLI::PositiveNumber);
  cmd_simulate->add_option("--seed", sim_seed,
                           "random seed (default 20250814)");
  cmd_simulate->add_option("--phase", sim_phase, "true phase in radians");
  cmd_simulate->add_option("--tol", sim_tol, "eigensolver tolerance")
      ->check(CLI::PositiveNumber);
  add_output_options(cmd_simulate, sim_out);
  cmd_simulate->callback([&]() {
    run_simulate(sim_n, sim_eta.loss(), sim_samples, sim_seed, sim_phase,
                 sim_tol, sim_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
