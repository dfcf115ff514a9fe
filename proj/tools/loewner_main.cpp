// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "loewner/errors.hpp"
#include "loewner/experiments.hpp"
#include "loewner/version.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>

namespace {

using namespace loewner;

struct CliOptions {
  std::optional<std::string> config_file;
  std::optional<std::string> system;
  std::optional<int> input_index, output_index, order, test_points, replicates;
  std::optional<double> freq_lo, freq_hi;
  std::optional<std::string> scheme, noise, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<double>> sigma_grid;
};

void add_common_flags(CLI::App *cmd, CliOptions &opt) {
  cmd->add_option("--config", opt.config_file,
                  "key = value config file; explicit flags override it");
  cmd->add_option("--system", opt.system, "penzl or path:<dir> (MatrixMarket)");
  cmd->add_option("--input-index", opt.input_index, "1-based input column");
  cmd->add_option("--output-index", opt.output_index, "1-based output row");
  cmd->add_option("--order", opt.order, "reduced order r");
  cmd->add_option("--freq-lo", opt.freq_lo, "frequency range start (rad/s)");
  cmd->add_option("--freq-hi", opt.freq_hi, "frequency range end (rad/s)");
  cmd->add_option("--scheme", opt.scheme, "point scheme: log or random");
  cmd->add_option("--seed", opt.seed, "experiment seed");
  cmd->add_option("--sigma-grid", opt.sigma_grid,
                  "noise standard deviations (comma separated)")
      ->delimiter(',');
  cmd->add_option("--replicates", opt.replicates, "noise replicates per sigma");
  cmd->add_option("--test-points", opt.test_points, "test grid size");
  cmd->add_option("--noise", opt.noise, "noise mode: relative or absolute");
  cmd->add_option("--out", opt.out_dir, "output directory");
}

ExperimentConfig resolve_config(const CliOptions &opt) {
  ExperimentConfig cfg;
  if (opt.config_file)
    cfg = ExperimentConfig::from_file(*opt.config_file);
  if (opt.system) {
    if (*opt.system == "penzl") {
      cfg.system = SystemKind::penzl;
      cfg.system_path.clear();
    } else if (opt.system->rfind("path:", 0) == 0) {
      cfg.system = SystemKind::path;
      cfg.system_path = opt.system->substr(5);
    } else {
      throw ConfigError("--system must be penzl or path:<dir>");
    }
  }
  if (opt.input_index)
    cfg.input_index = *opt.input_index;
  if (opt.output_index)
    cfg.output_index = *opt.output_index;
  if (opt.order)
    cfg.r = *opt.order;
  if (opt.freq_lo)
    cfg.freq_lo = *opt.freq_lo;
  if (opt.freq_hi)
    cfg.freq_hi = *opt.freq_hi;
  if (opt.scheme) {
    if (*opt.scheme == "log")
      cfg.scheme = PointScheme::log_conjugate;
    else if (*opt.scheme == "random")
      cfg.scheme = PointScheme::random;
    else
      throw ConfigError("--scheme must be log or random");
  }
  if (opt.seed)
    cfg.seed = *opt.seed;
  if (opt.sigma_grid)
    cfg.sigma_grid = *opt.sigma_grid;
  if (opt.replicates)
    cfg.replicates = *opt.replicates;
  if (opt.test_points)
    cfg.n_test = *opt.test_points;
  if (opt.noise) {
    if (*opt.noise == "relative")
      cfg.noise_mode = NoiseMode::relative;
    else if (*opt.noise == "absolute")
      cfg.noise_mode = NoiseMode::absolute;
    else
      throw ConfigError("--noise must be relative or absolute");
  }
  if (opt.out_dir)
    cfg.out_dir = *opt.out_dir;
  return cfg;
}

int cmd_sweep(const ExperimentConfig &cfg) {
  const auto rows = run_sweep(cfg);
  std::printf("# sigma mean_err min_err max_err violated\n");
  for (const auto &row : rows)
    std::printf("%.3e %.6e %.6e %.6e %d\n", row.sigma, row.mean_err,
                row.min_err, row.max_err, row.violated_count);
  std::printf("wrote sweep.csv, violations.csv, skipped.csv, sweep.gp to %s\n",
              cfg.out_dir.c_str());
  return 0;
}

int cmd_audit(const ExperimentConfig &cfg, double sigma_opt, int s_count,
              int draws) {
  const StateSpaceSystem sys = make_system(cfg);
  const InterpolationSet points = make_points(cfg);
  const FrequencyData data = sample_data(sys, points);
  const LoewnerModel model = build_loewner(data);
  const std::vector<Complex> grid = make_test_grid(cfg);

  // Rank grid points by admissibility headroom and keep the s_count best.
  std::vector<std::pair<double, Complex>> ranked;
  for (const Complex s : grid) {
    try {
      ranked.emplace_back(sigma_max(model, data, s), s);
    } catch (const SingularPencil &) {
    }
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto &a, const auto &b) { return a.first > b.first; });
  if (ranked.empty() || !(ranked.front().first > 0.0))
    throw InadmissiblePoint("no admissible test point for this model");
  const std::size_t take =
      std::min<std::size_t>(static_cast<std::size_t>(s_count), ranked.size());
  std::vector<Complex> s_list;
  double min_smax = ranked.front().first;
  for (std::size_t i = 0; i < take; ++i) {
    s_list.push_back(ranked[i].second);
    min_smax = std::min(min_smax, ranked[i].first);
  }
  const double sigma = sigma_opt > 0.0 ? sigma_opt : min_smax / 10.0;

  const auto rows = run_bound_audit(cfg, s_list, sigma, draws);
  std::printf("# s sigma bound violations/draws freq ceiling\n");
  for (const auto &row : rows)
    std::printf("(%.4e,%.4e) %.3e %.6e %d/%d %.2e %.2e\n", row.s.real(),
                row.s.imag(), row.sigma, row.bound_abs, row.violations,
                row.draws, row.violation_freq, row.ceiling);
  std::printf("wrote audit.csv, bounds.csv, draw0.csv to %s\n",
              cfg.out_dir.c_str());
  return 0;
}

int cmd_trace(const ExperimentConfig &cfg, double sigma) {
  const auto rows = run_tf_trace(cfg, sigma);
  double worst = 0.0;
  for (const auto &row : rows)
    if (std::isfinite(row.mag_noisy) && row.mag_model > 0.0)
      worst = std::max(worst,
                       std::abs(row.mag_noisy - row.mag_model) / row.mag_model);
  std::printf("traced %zu frequencies; max relative magnitude gap %.3e\n",
              rows.size(), worst);
  std::printf("wrote trace.csv, trace.gp to %s\n", cfg.out_dir.c_str());
  return 0;
}

int cmd_points(const ExperimentConfig &cfg) {
  const StateSpaceSystem sys = make_system(cfg);
  const InterpolationSet points = make_points(cfg);
  const FrequencyData data = sample_data(sys, points);
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream out(std::filesystem::path(cfg.out_dir) / "points.csv");
  if (!out)
    throw ConfigError("cannot write points.csv under " + cfg.out_dir);
  write_frequency_data_csv(out, data);
  std::printf("wrote %lld interpolation points with samples to %s/points.csv\n",
              static_cast<long long>(2 * points.order()), cfg.out_dir.c_str());
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Loewner rational interpolation from frequency-response data "
               "with noise-robustness analysis"};
  app.set_version_flag("--version", loewner::kVersion);
  app.require_subcommand(1);

  CliOptions opt;
  double audit_sigma = 0.0;
  int audit_s_count = 5;
  int audit_draws = 2000;
  double trace_sigma = 1e-6;

  auto *sweep = app.add_subcommand("sweep", "sigma sweep of the test-grid "
                                            "error with replicates");
  add_common_flags(sweep, opt);

  auto *audit = app.add_subcommand(
      "audit", "empirical violation frequency of the absolute error bound");
  add_common_flags(audit, opt);
  audit->add_option("--sigma", audit_sigma,
                    "noise level (default: min sigma_max over picked s / 10)");
  audit->add_option("--s-count", audit_s_count,
                    "number of test-grid points to audit");
  audit->add_option("--draws", audit_draws, "independent draws per point");

  auto *trace = app.add_subcommand(
      "trace", "magnitude traces of full system, model, and noisy model");
  add_common_flags(trace, opt);
  trace->add_option("--sigma", trace_sigma, "noise level for the noisy trace");

  auto *points_cmd = app.add_subcommand(
      "points", "write the interpolation points and sampled values");
  add_common_flags(points_cmd, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig cfg = resolve_config(opt);
    if (sweep->parsed())
      return cmd_sweep(cfg);
    if (audit->parsed())
      return cmd_audit(cfg, audit_sigma, audit_s_count, audit_draws);
    if (trace->parsed())
      return cmd_trace(cfg, trace_sigma);
    if (points_cmd->parsed())
      return cmd_points(cfg);
  } catch (const loewner::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
