// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOEWNER_LOEWNER_HPP
#define LOEWNER_LOEWNER_HPP

#include "loewner/state_space.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace loewner {

// 2r interpolation points, partitioned into the driving set {mu_i} and
// the measuring set {gamma_j}.
struct InterpolationSet {
  std::vector<Complex> mu;
  std::vector<Complex> gamma;

  Eigen::Index order() const { return static_cast<Eigen::Index>(mu.size()); }

  // Equal sizes >= 1, all 2r points pairwise distinct (separation below
  // point_sep_tol counts as a duplicate).
  void validate() const;

  // 1e-12 * max point magnitude; Loewner divided differences blow up
  // below this.
  double point_sep_tol() const;
};

enum class NoiseLabel { noiseless, noisy };

// Transfer-function values aligned index-wise with an interpolation set.
struct FrequencyData {
  InterpolationSet points;
  Eigen::VectorXcd h_mu;
  Eigen::VectorXcd h_gamma;
  NoiseLabel label = NoiseLabel::noiseless;
  double sigma = 0.0; // meaningful when label == noisy

  Eigen::Index order() const { return points.order(); }
  void validate() const;
};

// Reduced model (E_hat, A_hat, B_hat, C_hat) = (-L, -L_shifted, H(mu),
// H(gamma)) with transfer function C_hat (s E_hat - A_hat)^{-1} B_hat.
struct LoewnerModel {
  Eigen::MatrixXcd E_hat;
  Eigen::MatrixXcd A_hat;
  Eigen::VectorXcd B_hat;
  Eigen::RowVectorXcd C_hat;
  NoiseLabel source = NoiseLabel::noiseless;
  double source_sigma = 0.0;

  Eigen::Index order() const { return E_hat.rows(); }
};

// k-th of `count` logarithmically equidistant values in [lo, hi].
double log_grid_value(double lo, double hi, std::size_t k, std::size_t count);

// r log-spaced imaginary points w_i in [freq_lo, freq_hi] (endpoints
// included), signs applied as s_i = (-1)^i w_i, s_{r+i} = (-1)^{i+1} w_i;
// first r points form mu, last r form gamma.
InterpolationSet select_points_log_conjugate(double freq_lo, double freq_hi,
                                             int r);

// r base points with real and imaginary parts drawn uniformly from 10^6
// log-equidistant grid values in [freq_lo, freq_hi], paired with their
// conjugates; pair k goes to mu when k is odd and to gamma when k is
// even (1-based), so each set holds whole conjugate pairs. Requires r
// even. Deterministic under seed.
InterpolationSet select_points_random(double freq_lo, double freq_hi, int r,
                                      std::uint64_t seed);

// Noiseless samples h_mu[i] = H(mu_i), h_gamma[j] = H(gamma_j).
FrequencyData sample_data(const StateSpaceSystem &sys,
                          const InterpolationSet &points);
FrequencyData sample_data(const TransferFunctionSampler &sampler,
                          const InterpolationSet &points);

// L_ij = (H(mu_i) - H(gamma_j)) / (mu_i - gamma_j), shifted variant with
// mu_i/gamma_j weights; E_hat = -L, A_hat = -L_shifted, B_hat_i = H(mu_i),
// C_hat_i = H(gamma_i). Identical construction for noisy data.
LoewnerModel build_loewner(const FrequencyData &data);

// C_hat (s E_hat - A_hat)^{-1} B_hat via one dense solve.
Complex evaluate_model(const LoewnerModel &model, Complex s);

// Max over all 2r interpolation points of
// |H(s_i) - H_hat(s_i)| / max(|H(s_i)|, 1e-300). Rejects models built
// from noisy data with LabelMismatch.
double verify_interpolation(const StateSpaceSystem &sys,
                            const LoewnerModel &model,
                            const InterpolationSet &points);

// (D1 E_hat D2, D1 A_hat D2, D1 B_hat, C_hat D2); the transfer function
// is unchanged while kappa_2(s E_hat - A_hat) generally is not.
LoewnerModel apply_transform(const LoewnerModel &model,
                             const Eigen::MatrixXcd &D1,
                             const Eigen::MatrixXcd &D2);

std::vector<PoleResidue> poles_residues(const LoewnerModel &model);

// CSV with header set,index,re_point,im_point,re_value,im_value.
void write_frequency_data_csv(std::ostream &out, const FrequencyData &data);

} // namespace loewner

#endif
