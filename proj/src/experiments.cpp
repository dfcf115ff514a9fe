// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "loewner/experiments.hpp"
#include "loewner/errors.hpp"
#include "loewner/rng.hpp"
#include "loewner/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace loewner {

namespace {

// Stream tags keep the sweep, audit, and trace noise streams disjoint.
constexpr std::uint64_t kSweepTag = 1;
constexpr std::uint64_t kAuditTag = 2;
constexpr std::uint64_t kTraceTag = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path &p) {
  std::ofstream out(p);
  if (!out)
    throw ConfigError("cannot open " + p.string() + " for writing");
  return out;
}

void write_manifest(const ExperimentConfig &cfg) {
  auto out = open_out(std::filesystem::path(cfg.out_dir) / "manifest.txt");
  out << "loewner version " << kVersion << "\n";
  out << "system = "
      << (cfg.system == SystemKind::penzl ? "penzl" : "path:" + cfg.system_path)
      << "\n";
  out << "input_index = " << cfg.input_index << "\n";
  out << "output_index = " << cfg.output_index << "\n";
  out << "order = " << cfg.r << "\n";
  out << "freq_lo = " << fmt(cfg.freq_lo) << "\n";
  out << "freq_hi = " << fmt(cfg.freq_hi) << "\n";
  out << "scheme = "
      << (cfg.scheme == PointScheme::log_conjugate ? "log" : "random") << "\n";
  out << "test_points = " << cfg.n_test << "\n";
  out << "replicates = " << cfg.replicates << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "noise = "
      << (cfg.noise_mode == NoiseMode::relative ? "relative" : "absolute")
      << "\n";
  out << "sigma_grid =";
  for (double s : cfg.sigma_grid)
    out << " " << fmt(s);
  out << "\n";
}

struct GridEvaluation {
  std::vector<Complex> grid;
  std::vector<std::optional<Complex>> h_hat; // absent: model pole on grid
  std::vector<double> sigma_max;             // 0 when inapplicable
};

GridEvaluation evaluate_grid(const ExperimentConfig &cfg,
                             const LoewnerModel &model,
                             const FrequencyData &data) {
  GridEvaluation ev;
  ev.grid = make_test_grid(cfg);
  ev.h_hat.resize(ev.grid.size());
  ev.sigma_max.resize(ev.grid.size(), 0.0);
  for (std::size_t i = 0; i < ev.grid.size(); ++i) {
    try {
      ev.h_hat[i] = evaluate_model(model, ev.grid[i]);
      ev.sigma_max[i] = sigma_max(model, data, ev.grid[i]);
    } catch (const SingularPencil &) {
      ev.h_hat[i].reset();
      ev.sigma_max[i] = 0.0;
    }
  }
  return ev;
}

} // namespace

std::vector<double> default_sigma_grid() {
  std::vector<double> grid(21);
  for (int k = 0; k < 21; ++k)
    grid[static_cast<std::size_t>(k)] = std::pow(10.0, -15.0 + k);
  return grid;
}

void ExperimentConfig::validate() const {
  if (system == SystemKind::path && system_path.empty())
    throw ConfigError("system=path requires a directory");
  if (r < 2)
    throw ConfigError("order r must be >= 2");
  if (!(freq_lo > 0.0) || !(freq_hi > freq_lo))
    throw ConfigError("need 0 < freq_lo < freq_hi");
  if (n_test < 1)
    throw ConfigError("test_points must be >= 1");
  if (replicates < 1)
    throw ConfigError("replicates must be >= 1");
  if (sigma_grid.empty())
    throw ConfigError("sigma_grid must be non-empty");
  double prev = 0.0;
  for (double s : sigma_grid) {
    if (!(s > prev))
      throw ConfigError("sigma_grid must be strictly increasing and positive");
    prev = s;
  }
  if (input_index < 1 || output_index < 1)
    throw ConfigError("input/output indices are 1-based");
}

ExperimentConfig
ExperimentConfig::from_file(const std::filesystem::path &file) {
  std::ifstream in(file);
  if (!in)
    throw ConfigError("cannot open config file " + file.string());
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto eq = line.find('=');
    const auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos)
        return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    if (strip(line).empty())
      continue;
    if (eq == std::string::npos)
      throw ConfigError(file.string() + ":" + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    try {
      if (key == "system") {
        if (value == "penzl") {
          cfg.system = SystemKind::penzl;
        } else if (value.rfind("path:", 0) == 0) {
          cfg.system = SystemKind::path;
          cfg.system_path = value.substr(5);
        } else {
          throw ConfigError("system must be penzl or path:<dir>");
        }
      } else if (key == "input_index") {
        cfg.input_index = std::stoi(value);
      } else if (key == "output_index") {
        cfg.output_index = std::stoi(value);
      } else if (key == "order") {
        cfg.r = std::stoi(value);
      } else if (key == "freq_lo") {
        cfg.freq_lo = std::stod(value);
      } else if (key == "freq_hi") {
        cfg.freq_hi = std::stod(value);
      } else if (key == "scheme") {
        if (value == "log")
          cfg.scheme = PointScheme::log_conjugate;
        else if (value == "random")
          cfg.scheme = PointScheme::random;
        else
          throw ConfigError("scheme must be log or random");
      } else if (key == "test_points") {
        cfg.n_test = std::stoi(value);
      } else if (key == "replicates") {
        cfg.replicates = std::stoi(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "noise") {
        if (value == "relative")
          cfg.noise_mode = NoiseMode::relative;
        else if (value == "absolute")
          cfg.noise_mode = NoiseMode::absolute;
        else
          throw ConfigError("noise must be relative or absolute");
      } else if (key == "out") {
        cfg.out_dir = value;
      } else if (key == "sigma_grid") {
        cfg.sigma_grid.clear();
        std::istringstream vs(value);
        std::string tok;
        while (std::getline(vs, tok, ','))
          cfg.sigma_grid.push_back(std::stod(tok));
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError &) {
      throw;
    } catch (const std::exception &) {
      throw ConfigError(file.string() + ":" + std::to_string(lineno) +
                        ": bad value for " + key);
    }
  }
  return cfg;
}

StateSpaceSystem make_system(const ExperimentConfig &cfg) {
  if (cfg.system == SystemKind::penzl)
    return make_penzl();
  return load_system(cfg.system_path, cfg.input_index, cfg.output_index);
}

InterpolationSet make_points(const ExperimentConfig &cfg) {
  if (cfg.scheme == PointScheme::log_conjugate)
    return select_points_log_conjugate(cfg.freq_lo, cfg.freq_hi, cfg.r);
  return select_points_random(cfg.freq_lo, cfg.freq_hi, cfg.r, cfg.seed);
}

std::vector<Complex> make_test_grid(const ExperimentConfig &cfg) {
  std::vector<Complex> grid;
  grid.reserve(static_cast<std::size_t>(cfg.n_test));
  if (cfg.n_test == 1) {
    grid.emplace_back(0.0, cfg.freq_lo);
    return grid;
  }
  for (int k = 0; k < cfg.n_test; ++k)
    grid.emplace_back(0.0,
                      log_grid_value(cfg.freq_lo, cfg.freq_hi,
                                     static_cast<std::size_t>(k),
                                     static_cast<std::size_t>(cfg.n_test)));
  return grid;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig &cfg) {
  cfg.validate();
  std::filesystem::create_directories(cfg.out_dir);

  const StateSpaceSystem sys = make_system(cfg);
  const TransferFunctionSampler sampler(sys);
  const InterpolationSet points = make_points(cfg);
  const FrequencyData data = sample_data(sampler, points);
  const LoewnerModel model = build_loewner(data);
  const GridEvaluation ev = evaluate_grid(cfg, model, data);
  const std::size_t n_test = ev.grid.size();

  struct SkippedRow {
    double sigma;
    int replicate;
    std::size_t point;
  };
  std::vector<SkippedRow> skipped;
  std::vector<SweepRow> rows;
  rows.reserve(cfg.sigma_grid.size());

  for (std::size_t si = 0; si < cfg.sigma_grid.size(); ++si) {
    const double sigma = cfg.sigma_grid[si];
    SweepRow row;
    row.sigma = sigma;
    row.violated_count = static_cast<int>(
        std::count_if(ev.sigma_max.begin(), ev.sigma_max.end(),
                      [&](double sm) { return sigma >= sm; }));
    for (int rep = 0; rep < cfg.replicates; ++rep) {
      const std::uint64_t stream =
          rng::mix(kSweepTag, rng::mix(si, static_cast<std::uint64_t>(rep)));
      const NoiseDraw draw =
          draw_noise(points.order(), cfg.seed, stream, cfg.noise_mode);
      const LoewnerModel noisy = build_loewner(pollute(data, sigma, draw));
      double sum = 0.0;
      for (std::size_t i = 0; i < n_test; ++i) {
        if (!ev.h_hat[i]) {
          skipped.push_back({sigma, rep, i});
          continue;
        }
        try {
          sum += std::abs(*ev.h_hat[i] - evaluate_model(noisy, ev.grid[i]));
        } catch (const SingularPencil &) {
          skipped.push_back({sigma, rep, i});
        }
      }
      row.replicate_errors.push_back(sum / static_cast<double>(n_test));
    }
    row.mean_err = 0.0;
    row.min_err = row.replicate_errors.front();
    row.max_err = row.replicate_errors.front();
    for (double e : row.replicate_errors) {
      row.mean_err += e;
      row.min_err = std::min(row.min_err, e);
      row.max_err = std::max(row.max_err, e);
    }
    row.mean_err /= static_cast<double>(cfg.replicates);
    rows.push_back(std::move(row));
  }

  const std::filesystem::path dir(cfg.out_dir);
  {
    auto out = open_out(dir / "sweep.csv");
    out << "sigma,mean_err,min_err,max_err";
    for (int rep = 1; rep <= cfg.replicates; ++rep)
      out << ",rep_" << rep;
    out << "\n";
    for (const SweepRow &row : rows) {
      out << fmt(row.sigma) << "," << fmt(row.mean_err) << ","
          << fmt(row.min_err) << "," << fmt(row.max_err);
      for (double e : row.replicate_errors)
        out << "," << fmt(e);
      out << "\n";
    }
  }
  {
    auto out = open_out(dir / "violations.csv");
    out << "sigma,violated_count\n";
    for (const SweepRow &row : rows)
      out << fmt(row.sigma) << "," << row.violated_count << "\n";
  }
  {
    auto out = open_out(dir / "skipped.csv");
    out << "sigma,replicate,point_index,freq\n";
    for (const SkippedRow &s : skipped)
      out << fmt(s.sigma) << "," << (s.replicate + 1) << "," << (s.point + 1)
          << "," << fmt(ev.grid[s.point].imag()) << "\n";
  }
  {
    // Reference line anchored at the first admissible sigma.
    double ref = rows.front().mean_err / rows.front().sigma;
    for (const SweepRow &row : rows)
      if (row.violated_count == 0) {
        ref = row.mean_err / row.sigma;
        break;
      }
    auto out = open_out(dir / "sweep.gp");
    out << "set datafile separator ','\n"
        << "set terminal pngcairo size 900,600\n"
        << "set logscale xy\n"
        << "set xlabel 'sigma'\n"
        << "set output 'sweep.png'\n"
        << "set ylabel 'e(sigma)'\n"
        << "plot 'sweep.csv' skip 1 using 1:2:3:4 with yerrorbars"
        << " title 'mean e(sigma), min/max over replicates', \\\n"
        << "     'sweep.csv' skip 1 using 1:($1*" << fmt(ref)
        << ") with lines title 'linear reference'\n"
        << "set output 'violations.png'\n"
        << "unset logscale y\n"
        << "set ylabel 'test points violating the condition'\n"
        << "plot 'violations.csv' skip 1 using 1:2 with linespoints"
        << " title 'violated count'\n";
  }
  write_manifest(cfg);
  return rows;
}

std::vector<AuditRow> run_bound_audit(const ExperimentConfig &cfg,
                                      const std::vector<Complex> &s_list,
                                      double sigma, int draws) {
  cfg.validate();
  if (draws < 0)
    throw ConfigError("draws must be >= 0");
  std::filesystem::create_directories(cfg.out_dir);

  const StateSpaceSystem sys = make_system(cfg);
  const InterpolationSet points = make_points(cfg);
  const FrequencyData data = sample_data(sys, points);
  const LoewnerModel model = build_loewner(data);
  const Eigen::Index r = points.order();
  const double ceiling = 4.0 * std::exp(-static_cast<double>(r) / 2.0);

  std::vector<AuditRow> rows;
  std::vector<BoundReport> reports;
  if (draws > 0) {
    for (std::size_t k = 0; k < s_list.size(); ++k) {
      const Complex s = s_list[k];
      const BoundReport rep = theorem_bound(model, data, s, sigma);
      reports.push_back(rep);
      if (!rep.admissible) {
        std::ostringstream msg;
        msg << "sigma=" << sigma << " is inadmissible at s=(" << s.real()
            << "," << s.imag() << "): sigma_max=" << rep.sigma_max;
        throw InadmissiblePoint(msg.str());
      }
      const Complex h_hat = evaluate_model(model, s);
      AuditRow row;
      row.s = s;
      row.sigma = sigma;
      row.sigma_max = rep.sigma_max;
      row.bound_abs = *rep.bound_abs;
      row.draws = draws;
      for (int d = 0; d < draws; ++d) {
        const std::uint64_t stream =
            rng::mix(kAuditTag, rng::mix(k, static_cast<std::uint64_t>(d)));
        const NoiseDraw draw =
            draw_noise(r, cfg.seed, stream, cfg.noise_mode);
        const LoewnerModel noisy = build_loewner(pollute(data, sigma, draw));
        bool violated = false;
        try {
          violated = std::abs(h_hat - evaluate_model(noisy, s)) > row.bound_abs;
        } catch (const SingularPencil &) {
          violated = true; // the bound asserts s is not a pole of H_tilde
        }
        row.violations += violated ? 1 : 0;
      }
      row.violation_freq =
          static_cast<double>(row.violations) / static_cast<double>(draws);
      row.ceiling = ceiling;
      rows.push_back(row);
    }
  }

  const std::filesystem::path dir(cfg.out_dir);
  {
    auto out = open_out(dir / "audit.csv");
    out << "re_s,im_s,sigma,sigma_max,bound_abs,draws,violations,"
           "violation_freq,ceiling\n";
    for (const AuditRow &row : rows)
      out << fmt(row.s.real()) << "," << fmt(row.s.imag()) << ","
          << fmt(row.sigma) << "," << fmt(row.sigma_max) << ","
          << fmt(row.bound_abs) << "," << row.draws << "," << row.violations
          << "," << fmt(row.violation_freq) << "," << fmt(row.ceiling) << "\n";
  }
  {
    auto out = open_out(dir / "bounds.csv");
    write_bound_reports_csv(out, reports);
  }
  {
    // First draw of the first s, for the audit trail.
    auto out = open_out(dir / "draw0.csv");
    write_noise_draw_csv(out, draw_noise(r, cfg.seed,
                                         rng::mix(kAuditTag, rng::mix(0, 0)),
                                         cfg.noise_mode, sigma));
  }
  write_manifest(cfg);
  return rows;
}

std::vector<TraceRow> run_tf_trace(const ExperimentConfig &cfg, double sigma) {
  cfg.validate();
  std::filesystem::create_directories(cfg.out_dir);

  const StateSpaceSystem sys = make_system(cfg);
  const TransferFunctionSampler sampler(sys);
  const InterpolationSet points = make_points(cfg);
  const FrequencyData data = sample_data(sampler, points);
  const LoewnerModel model = build_loewner(data);
  const NoiseDraw draw =
      draw_noise(points.order(), cfg.seed, kTraceTag, cfg.noise_mode);
  const LoewnerModel noisy = build_loewner(pollute(data, sigma, draw));

  const std::vector<Complex> grid = make_test_grid(cfg);
  std::vector<TraceRow> rows;
  rows.reserve(grid.size());
  const auto mag = [](auto &&eval) {
    try {
      return std::abs(eval());
    } catch (const SingularPencil &) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  for (const Complex s : grid) {
    TraceRow row;
    row.freq = s.imag();
    row.mag_full = mag([&] { return sampler(s); });
    row.mag_model = mag([&] { return evaluate_model(model, s); });
    row.mag_noisy = mag([&] { return evaluate_model(noisy, s); });
    rows.push_back(row);
  }

  const std::filesystem::path dir(cfg.out_dir);
  {
    auto out = open_out(dir / "trace.csv");
    out << "freq,mag_full,mag_model,mag_noisy\n";
    for (const TraceRow &row : rows)
      out << fmt(row.freq) << "," << fmt(row.mag_full) << ","
          << fmt(row.mag_model) << "," << fmt(row.mag_noisy) << "\n";
  }
  {
    auto out = open_out(dir / "trace.gp");
    out << "set datafile separator ','\n"
        << "set terminal pngcairo size 900,600\n"
        << "set output 'trace.png'\n"
        << "set logscale xy\n"
        << "set xlabel 'frequency (rad/s)'\n"
        << "set ylabel '|H(iw)|'\n"
        << "plot 'trace.csv' skip 1 using 1:2 with lines title 'full system', \\\n"
        << "     'trace.csv' skip 1 using 1:3 with lines title 'model', \\\n"
        << "     'trace.csv' skip 1 using 1:4 with lines title 'noisy model'\n";
  }
  write_manifest(cfg);
  return rows;
}

} // namespace loewner
