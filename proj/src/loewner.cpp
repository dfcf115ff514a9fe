// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "loewner/loewner.hpp"
#include "loewner/errors.hpp"
#include "loewner/rng.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace loewner {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kRandomGridCount = 1'000'000;

double max_point_magnitude(const InterpolationSet &pts) {
  double m = 0.0;
  for (const Complex p : pts.mu)
    m = std::max(m, std::abs(p));
  for (const Complex p : pts.gamma)
    m = std::max(m, std::abs(p));
  return m;
}

void check_separation(const InterpolationSet &pts) {
  const double tol = pts.point_sep_tol();
  for (const Complex mu : pts.mu)
    for (const Complex gamma : pts.gamma)
      if (std::abs(mu - gamma) < tol)
        throw PointCollision("mu/gamma separation below point_sep_tol");
}

} // namespace

double InterpolationSet::point_sep_tol() const {
  return 1e-12 * max_point_magnitude(*this);
}

void InterpolationSet::validate() const {
  if (mu.empty() || mu.size() != gamma.size())
    throw DimensionMismatch("mu and gamma must have equal size r >= 1");
  std::vector<Complex> all(mu);
  all.insert(all.end(), gamma.begin(), gamma.end());
  const double tol = point_sep_tol();
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (std::abs(all[i] - all[j]) < tol)
        throw DuplicatePoints("interpolation points are not pairwise distinct");
}

void FrequencyData::validate() const {
  points.validate();
  if (h_mu.size() != points.order() || h_gamma.size() != points.order())
    throw DimensionMismatch("value sequences do not align with points");
}

double log_grid_value(double lo, double hi, std::size_t k, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2 || k >= count)
    throw InvalidRange("log grid requires 0 < lo < hi and k < count");
  const double t = static_cast<double>(k) / static_cast<double>(count - 1);
  return lo * std::pow(hi / lo, t);
}

InterpolationSet select_points_log_conjugate(double freq_lo, double freq_hi,
                                             int r) {
  if (!(freq_lo > 0.0) || !(freq_hi > freq_lo))
    throw InvalidRange("need 0 < freq_lo < freq_hi");
  if (r < 2)
    throw InvalidRange("need r >= 2");
  InterpolationSet pts;
  pts.mu.resize(static_cast<std::size_t>(r));
  pts.gamma.resize(static_cast<std::size_t>(r));
  for (int i = 1; i <= r; ++i) {
    const double w = log_grid_value(freq_lo, freq_hi,
                                    static_cast<std::size_t>(i - 1),
                                    static_cast<std::size_t>(r));
    const double sign = (i % 2 == 0) ? 1.0 : -1.0; // (-1)^i
    pts.mu[static_cast<std::size_t>(i - 1)] = Complex(0.0, sign * w);
    pts.gamma[static_cast<std::size_t>(i - 1)] = Complex(0.0, -sign * w);
  }
  pts.validate();
  return pts;
}

InterpolationSet select_points_random(double freq_lo, double freq_hi, int r,
                                      std::uint64_t seed) {
  if (!(freq_lo > 0.0) || !(freq_hi > freq_lo))
    throw InvalidRange("need 0 < freq_lo < freq_hi");
  if (r < 2 || r % 2 != 0)
    throw OddOrder("random point selection requires an even order r >= 2");
  InterpolationSet pts;
  for (int k = 0; k < r; ++k) {
    const auto re_idx = rng::uniform_index(
        rng::key(seed, 0, static_cast<std::uint64_t>(k), 0), kRandomGridCount);
    const auto im_idx = rng::uniform_index(
        rng::key(seed, 0, static_cast<std::uint64_t>(k), 1), kRandomGridCount);
    const Complex base(log_grid_value(freq_lo, freq_hi, re_idx,
                                      kRandomGridCount),
                       log_grid_value(freq_lo, freq_hi, im_idx,
                                      kRandomGridCount));
    auto &cell = (k % 2 == 0) ? pts.mu : pts.gamma; // pair k+1 odd -> mu
    cell.push_back(base);
    cell.push_back(std::conj(base));
  }
  pts.validate();
  return pts;
}

FrequencyData sample_data(const TransferFunctionSampler &sampler,
                          const InterpolationSet &points) {
  points.validate();
  const Eigen::Index r = points.order();
  FrequencyData data;
  data.points = points;
  data.h_mu.resize(r);
  data.h_gamma.resize(r);
  const auto eval_at = [&](const std::vector<Complex> &pts, const char *set,
                           Eigen::VectorXcd &out) {
    for (Eigen::Index i = 0; i < r; ++i) {
      try {
        out(i) = sampler(pts[static_cast<std::size_t>(i)]);
      } catch (const SingularPencil &e) {
        throw SingularPencil(std::string(e.what()) + " [" + set + " point " +
                             std::to_string(i + 1) + "]");
      }
    }
  };
  eval_at(points.mu, "mu", data.h_mu);
  eval_at(points.gamma, "gamma", data.h_gamma);
  data.label = NoiseLabel::noiseless;
  data.sigma = 0.0;
  return data;
}

FrequencyData sample_data(const StateSpaceSystem &sys,
                          const InterpolationSet &points) {
  return sample_data(TransferFunctionSampler(sys), points);
}

LoewnerModel build_loewner(const FrequencyData &data) {
  if (data.points.mu.empty() ||
      data.points.mu.size() != data.points.gamma.size() ||
      data.h_mu.size() != data.points.order() ||
      data.h_gamma.size() != data.points.order())
    throw DimensionMismatch("value sequences do not align with points");
  check_separation(data.points); // PointCollision before duplicate checks
  data.validate();
  const Eigen::Index r = data.order();
  LoewnerModel model;
  model.E_hat.resize(r, r);
  model.A_hat.resize(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Complex mu = data.points.mu[static_cast<std::size_t>(i)];
    const Complex hm = data.h_mu(i);
    for (Eigen::Index j = 0; j < r; ++j) {
      const Complex gamma = data.points.gamma[static_cast<std::size_t>(j)];
      const Complex hg = data.h_gamma(j);
      const Complex den = mu - gamma;
      model.E_hat(i, j) = -(hm - hg) / den;
      model.A_hat(i, j) = -(mu * hm - gamma * hg) / den;
    }
  }
  model.B_hat = data.h_mu;
  model.C_hat = data.h_gamma.transpose();
  model.source = data.label;
  model.source_sigma = data.sigma;
  return model;
}

Complex evaluate_model(const LoewnerModel &model, Complex s) {
  Eigen::MatrixXcd pencil = s * model.E_hat - model.A_hat;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(pencil);
  if (!(lu.rcond() > kEps))
    throw SingularPencil("s E_hat - A_hat is singular (s at/near a pole)");
  Eigen::VectorXcd x = lu.solve(model.B_hat);
  return (model.C_hat * x)(0);
}

double verify_interpolation(const StateSpaceSystem &sys,
                            const LoewnerModel &model,
                            const InterpolationSet &points) {
  if (model.source != NoiseLabel::noiseless)
    throw LabelMismatch("interpolation check requires a noiseless model");
  const TransferFunctionSampler sampler(sys);
  double worst = 0.0;
  const auto check = [&](const std::vector<Complex> &pts) {
    for (const Complex s : pts) {
      const Complex h = sampler(s);
      const Complex h_hat = evaluate_model(model, s);
      worst = std::max(worst,
                       std::abs(h - h_hat) / std::max(std::abs(h), kFloorAbs));
    }
  };
  check(points.mu);
  check(points.gamma);
  return worst;
}

LoewnerModel apply_transform(const LoewnerModel &model,
                             const Eigen::MatrixXcd &D1,
                             const Eigen::MatrixXcd &D2) {
  const Eigen::Index r = model.order();
  if (D1.rows() != r || D1.cols() != r || D2.rows() != r || D2.cols() != r)
    throw DimensionMismatch("transform factors must be r x r");
  for (const auto *d : {&D1, &D2}) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(*d);
    const auto &sv = svd.singularValues();
    if (!(sv(r - 1) > kRankTol * sv(0)))
      throw SingularTransform("transform factor is singular within tolerance");
  }
  LoewnerModel out;
  out.E_hat = D1 * model.E_hat * D2;
  out.A_hat = D1 * model.A_hat * D2;
  out.B_hat = D1 * model.B_hat;
  out.C_hat = model.C_hat * D2;
  out.source = model.source;
  out.source_sigma = model.source_sigma;
  return out;
}

std::vector<PoleResidue> poles_residues(const LoewnerModel &model) {
  return pencil_poles_residues(model.E_hat, model.A_hat, model.B_hat,
                               model.C_hat);
}

void write_frequency_data_csv(std::ostream &out, const FrequencyData &data) {
  out << "set,index,re_point,im_point,re_value,im_value\n";
  char buf[256];
  const auto row = [&](const char *set, Eigen::Index i, Complex p, Complex v) {
    std::snprintf(buf, sizeof buf, "%s,%lld,%.17g,%.17g,%.17g,%.17g\n", set,
                  static_cast<long long>(i + 1), p.real(), p.imag(), v.real(),
                  v.imag());
    out << buf;
  };
  for (Eigen::Index i = 0; i < data.order(); ++i)
    row("mu", i, data.points.mu[static_cast<std::size_t>(i)], data.h_mu(i));
  for (Eigen::Index i = 0; i < data.order(); ++i)
    row("gamma", i, data.points.gamma[static_cast<std::size_t>(i)],
        data.h_gamma(i));
}

} // namespace loewner
