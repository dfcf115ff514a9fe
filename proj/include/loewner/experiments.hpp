// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOEWNER_EXPERIMENTS_HPP
#define LOEWNER_EXPERIMENTS_HPP

#include "loewner/analysis.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace loewner {

enum class SystemKind { penzl, path };
enum class PointScheme { log_conjugate, random };

// 21 points log-spaced over [1e-15, 1e5].
std::vector<double> default_sigma_grid();

struct ExperimentConfig {
  SystemKind system = SystemKind::penzl;
  std::string system_path;
  int input_index = 1;
  int output_index = 1;
  int r = 16;
  double freq_lo = 10.0;
  double freq_hi = 1000.0;
  PointScheme scheme = PointScheme::log_conjugate;
  int n_test = 200;
  std::vector<double> sigma_grid = default_sigma_grid();
  int replicates = 10;
  std::uint64_t seed = 0;
  NoiseMode noise_mode = NoiseMode::relative;
  std::string out_dir = "out";

  void validate() const; // throws ConfigError

  // Key-value text file (key = value per line, # comments); unknown keys
  // are rejected.
  static ExperimentConfig from_file(const std::filesystem::path &file);
};

StateSpaceSystem make_system(const ExperimentConfig &cfg);
InterpolationSet make_points(const ExperimentConfig &cfg);

// n_test logarithmically spaced points i*w on the imaginary axis in
// [freq_lo, freq_hi].
std::vector<Complex> make_test_grid(const ExperimentConfig &cfg);

struct SweepRow {
  double sigma = 0.0;
  double mean_err = 0.0;
  double min_err = 0.0;
  double max_err = 0.0;
  int violated_count = 0; // test points with sigma >= sigma_max
  std::vector<double> replicate_errors;
};

// The sigma sweep: one noiseless model, then for every (sigma,
// replicate) an independent draw, the noisy model, and the test-grid
// average error e(sigma) = (1/n_test) sum |H_hat - H_tilde|. Writes
// sweep.csv, violations.csv, skipped.csv, sweep.gp, and manifest.txt
// under cfg.out_dir.
std::vector<SweepRow> run_sweep(const ExperimentConfig &cfg);

struct AuditRow {
  Complex s;
  double sigma = 0.0;
  double sigma_max = 0.0;
  double bound_abs = 0.0;
  int draws = 0;
  int violations = 0;
  double violation_freq = 0.0;
  double ceiling = 0.0; // 4 exp(-r/2)
};

// Empirical validity check of the absolute bound: per s, the violation
// frequency over independent draws. Every (s, sigma) must be admissible;
// offenders raise InadmissiblePoint. Writes audit.csv, bounds.csv,
// draw0.csv, manifest.txt.
std::vector<AuditRow> run_bound_audit(const ExperimentConfig &cfg,
                                      const std::vector<Complex> &s_list,
                                      double sigma, int draws);

struct TraceRow {
  double freq = 0.0;
  double mag_full = 0.0;  // |H(iw)|
  double mag_model = 0.0; // |H_hat(iw)|
  double mag_noisy = 0.0; // |H_tilde_sigma(iw)|
};

// Magnitude traces of the full system, the noiseless model, and one
// seeded noisy model over the test grid. Writes trace.csv, trace.gp,
// manifest.txt.
std::vector<TraceRow> run_tf_trace(const ExperimentConfig &cfg, double sigma);

} // namespace loewner

#endif
