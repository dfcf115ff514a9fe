// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "loewner/noise.hpp"
#include "loewner/errors.hpp"
#include "loewner/rng.hpp"

#include <cstdio>
#include <ostream>

namespace loewner {

namespace {

// Stream tags separating the eps and eta vectors within one draw.
constexpr std::uint64_t kEpsTag = 0x65707300; // "eps"
constexpr std::uint64_t kEtaTag = 0x65746100; // "eta"

void require_noiseless(const FrequencyData &data, const char *op) {
  if (data.label != NoiseLabel::noiseless)
    throw LabelMismatch(std::string(op) + " requires noiseless data");
}

void check_lengths(const FrequencyData &data, const NoiseDraw &draw) {
  if (draw.size() != data.order() || draw.eta.size() != draw.eps.size())
    throw LengthMismatch("draw length does not match the data order");
}

} // namespace

NoiseDraw draw_noise(Eigen::Index r, std::uint64_t seed, std::uint64_t stream,
                     NoiseMode mode, double sigma) {
  NoiseDraw draw;
  draw.eps.resize(r);
  draw.eta.resize(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    draw.eps(i) = rng::complex_normal(rng::key(seed, stream, kEpsTag, idx));
    draw.eta(i) = rng::complex_normal(rng::key(seed, stream, kEtaTag, idx));
  }
  draw.sigma = sigma;
  draw.mode = mode;
  draw.seed = seed;
  return draw;
}

FrequencyData pollute(const FrequencyData &data, double sigma,
                      const NoiseDraw &draw) {
  require_noiseless(data, "pollute");
  check_lengths(data, draw);
  if (!(sigma >= 0.0))
    throw InvalidRange("sigma must be >= 0");
  FrequencyData out = data;
  if (draw.mode == NoiseMode::relative) {
    out.h_mu.array() *= 1.0 + sigma * draw.eps.array();
    out.h_gamma.array() *= 1.0 + sigma * draw.eta.array();
  } else {
    out.h_mu += sigma * draw.eps;
    out.h_gamma += sigma * draw.eta;
  }
  out.label = NoiseLabel::noisy;
  out.sigma = sigma;
  return out;
}

PerturbationStructure delta_matrices(const FrequencyData &data,
                                     const NoiseDraw &draw) {
  require_noiseless(data, "delta_matrices");
  check_lengths(data, draw);
  const double tol = data.points.point_sep_tol();
  const Eigen::Index r = data.order();
  PerturbationStructure p;
  p.dL.resize(r, r);
  p.dLs.resize(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Complex mu = data.points.mu[static_cast<std::size_t>(i)];
    const Complex num_e = data.h_mu(i) * draw.eps(i);
    for (Eigen::Index j = 0; j < r; ++j) {
      const Complex gamma = data.points.gamma[static_cast<std::size_t>(j)];
      const Complex den = mu - gamma;
      if (std::abs(den) < tol)
        throw PointCollision("mu/gamma separation below point_sep_tol");
      const Complex num_a = data.h_gamma(j) * draw.eta(j);
      p.dL(i, j) = (num_e - num_a) / den;
      p.dLs(i, j) = (mu * num_e - gamma * num_a) / den;
    }
  }
  p.dB = data.h_mu.cwiseProduct(draw.eps);
  p.dC = data.h_gamma.cwiseProduct(draw.eta).transpose();
  return p;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>
structure_matrices(const FrequencyData &data, Complex s) {
  require_noiseless(data, "structure_matrices");
  if (data.h_mu.size() != data.points.order() ||
      data.h_gamma.size() != data.points.order())
    throw DimensionMismatch("value sequences do not align with points");
  const double tol = data.points.point_sep_tol();
  const Eigen::Index r = data.order();
  Eigen::MatrixXcd fe(r, r), fa(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Complex mu = data.points.mu[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < r; ++j) {
      const Complex gamma = data.points.gamma[static_cast<std::size_t>(j)];
      const Complex den = gamma - mu;
      if (std::abs(den) < tol)
        throw PointCollision("mu/gamma separation below point_sep_tol");
      fe(i, j) = data.h_mu(i) * (s - mu) / den;
      fa(i, j) = data.h_gamma(j) * (gamma - s) / den;
    }
  }
  return {std::move(fe), std::move(fa)};
}

void write_noise_draw_csv(std::ostream &out, const NoiseDraw &draw) {
  out << "index,re_eps,im_eps,re_eta,im_eta\n";
  char buf[192];
  for (Eigen::Index i = 0; i < draw.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(i + 1), draw.eps(i).real(),
                  draw.eps(i).imag(), draw.eta(i).real(), draw.eta(i).imag());
    out << buf;
  }
}

} // namespace loewner
