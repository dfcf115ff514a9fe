// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOEWNER_NOISE_HPP
#define LOEWNER_NOISE_HPP

#include "loewner/loewner.hpp"

#include <cstdint>
#include <iosfwd>
#include <utility>

namespace loewner {

enum class NoiseMode { relative, absolute };

// One replicate of the noise: eps_i, eta_i ~ CN(0,1), i.e. real and
// imaginary parts independent N(0,1) each with standard deviation 1.
// Reproducible from (seed, stream) regardless of thread scheduling.
struct NoiseDraw {
  Eigen::VectorXcd eps;
  Eigen::VectorXcd eta;
  double sigma = 0.0;
  NoiseMode mode = NoiseMode::relative;
  std::uint64_t seed = 0;

  Eigen::Index size() const { return eps.size(); }
};

NoiseDraw draw_noise(Eigen::Index r, std::uint64_t seed,
                     std::uint64_t stream = 0,
                     NoiseMode mode = NoiseMode::relative, double sigma = 0.0);

// Relative mode: H_sigma(mu_i) = H(mu_i) (1 + sigma eps_i) and likewise
// with eta on the gamma set; absolute mode adds sigma eps_i instead.
// The input data must be noiseless; the result is labeled noisy(sigma).
FrequencyData pollute(const FrequencyData &data, double sigma,
                      const NoiseDraw &draw);

// Structured perturbation of the Loewner matrices for a given draw:
// dL_ij = (H(mu_i) eps_i - H(gamma_j) eta_j) / (mu_i - gamma_j), the
// shifted variant with mu_i/gamma_j weights, dB_i = H(mu_i) eps_i,
// dC_i = H(gamma_i) eta_i. Satisfies build_loewner(pollute(data, s, d))
// = build_loewner(data) + s * (-dL, -dL_shifted, dB, dC) entrywise
// (relative mode).
struct PerturbationStructure {
  Eigen::MatrixXcd dL;
  Eigen::MatrixXcd dLs;
  Eigen::VectorXcd dB;
  Eigen::RowVectorXcd dC;
};

PerturbationStructure delta_matrices(const FrequencyData &data,
                                     const NoiseDraw &draw);

// Deterministic factors of the pencil perturbation at s:
// (F_E)_ij = H(mu_i) (s - mu_i) / (gamma_j - mu_i),
// (F_A)_ij = H(gamma_j) (gamma_j - s) / (gamma_j - mu_i),
// so that s * dE - dA = diag(eps) F_E + F_A diag(eta) for every draw.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>
structure_matrices(const FrequencyData &data, Complex s);

// CSV with header index,re_eps,im_eps,re_eta,im_eta.
void write_noise_draw_csv(std::ostream &out, const NoiseDraw &draw);

} // namespace loewner

#endif
