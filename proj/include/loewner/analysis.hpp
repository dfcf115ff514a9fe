// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOEWNER_ANALYSIS_HPP
#define LOEWNER_ANALYSIS_HPP

#include "loewner/loewner.hpp"
#include "loewner/noise.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace loewner {

// Largest singular value; full SVD at desk scale. Throws NonFiniteEntry.
double spectral_norm(const Eigen::MatrixXcd &m);

// kappa_2(s E_hat - A_hat): ratio of extreme singular values.
double condition_number(const LoewnerModel &model, Complex s);

// Lemma-level admissibility threshold:
// sigma_max = (1 / kappa_2) * min( ||sE-A|| / (4 sqrt(r) (||F_E|| + ||F_A||)),
//                                  ||B|| / (4 sqrt(r) ||B||_inf) ).
// A standard deviation sigma is admissible iff sigma < sigma_max.
double sigma_max(const LoewnerModel &model, const FrequencyData &data,
                 Complex s);

// Relative solution error bound 2 zeta kappa / (1 - zeta kappa) for a
// perturbed linear system; requires zeta * kappa < 1.
double deterministic_pert_bound(double kappa2, double zeta);

// Every constant and threshold of the pointwise error bound at (s, sigma).
struct BoundReport {
  Complex s;
  double sigma = 0.0;
  double kappa2 = 0.0;      // kappa_2(s E_hat - A_hat)
  double norm_pencil = 0.0; // ||s E_hat - A_hat||_2
  double norm_FE = 0.0;
  double norm_FA = 0.0;
  double zeta_hat = 0.0; // max(4 sqrt(r)(||F_E||+||F_A||)/||sE-A||,
                         //     4 sqrt(r) ||B||_inf / ||B||_2)
  double zeta = 0.0;     // sigma * zeta_hat
  double nu = 0.0;       // 4 sqrt(r)(||F_E||+||F_A||) ||(sE-A)^{-1}||_2
  double c1 = 0.0;       // 2 ||C||_2 ||(sE-A)^{-1}B||_2 kappa_2
  double c2 = 0.0;       // 4 sqrt(r) ||C||_inf ||B||_2 ||(sE-A)^{-1}||_2
  double sigma_max = 0.0;
  bool admissible = false; // 0 < sigma < sigma_max
  std::optional<double> bound_abs; // absent when inadmissible
  std::optional<double> bound_rel; // absent when inadmissible or undefined
  double cos_angle = 0.0; // |cos angle(C_hat^*, (sE-A)^{-1} B_hat)|
  double probability_floor = 0.0; // 1 - 4 exp(-r/2)
};

// |H_hat(s) - H_tilde(s)| <= sigma [ c1 zeta_hat / (1 - sigma zeta_hat
// kappa) + c2 (1 + 4 sigma sqrt(r)) / (1 - nu sigma) ], reported with all
// ingredients; bound_abs is set only when sigma is admissible.
BoundReport theorem_bound(const LoewnerModel &model, const FrequencyData &data,
                          Complex s, double sigma);

// Relative-error bound with the two natural condition numbers:
// sigma * (1/|cos theta_s|) * ( 2 zeta_hat kappa / (1 - sigma zeta_hat
// kappa) + 4 sqrt(r) (1 + zeta kappa)/(1 - zeta kappa) ||C||_inf/||C||_2 ).
double relative_bound(const LoewnerModel &model, const FrequencyData &data,
                      Complex s, double sigma);

// Pole-residue sums may leave small imaginary or negative-real residue
// from cancellation; values are relative to |S| and flagged against
// h2_consistency_tol = 1e-6 rather than failing.
struct H2Diagnostics {
  double imag_residual = 0.0;
  double negative_residual = 0.0;
  bool consistent = true;
};

// || H1 - H2 ||_{H2} via the pole-residue formula
// sum_i phi1_i (H1(-lam1_i) - H2(-lam1_i)) +
// sum_j phi2_j (H2(-lam2_j) - H1(-lam2_j)).
// Both models must be stable with simple poles and of equal order.
double h2_error(const LoewnerModel &m1, const LoewnerModel &m2,
                H2Diagnostics *diag = nullptr);

// CSV, one row per report; booleans as 0/1, absent bounds as empty cells.
void write_bound_reports_csv(std::ostream &out,
                             const std::vector<BoundReport> &reports);

} // namespace loewner

#endif
