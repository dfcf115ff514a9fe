// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "loewner/analysis.hpp"
#include "loewner/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace loewner {

namespace {

constexpr double kH2ConsistencyTol = 1e-6;

Eigen::VectorXd singular_values(const Eigen::MatrixXcd &m) {
  if (!m.allFinite())
    throw NonFiniteEntry("matrix has a non-finite entry");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

} // namespace

double spectral_norm(const Eigen::MatrixXcd &m) {
  return singular_values(m)(0);
}

double condition_number(const LoewnerModel &model, Complex s) {
  const Eigen::VectorXd sv = singular_values(s * model.E_hat - model.A_hat);
  const double smin = sv(sv.size() - 1);
  if (!(smin > std::numeric_limits<double>::min()))
    throw SingularPencil("smallest singular value below underflow guard");
  return sv(0) / smin;
}

double sigma_max(const LoewnerModel &model, const FrequencyData &data,
                 Complex s) {
  return theorem_bound(model, data, s, 0.0).sigma_max;
}

double deterministic_pert_bound(double kappa2, double zeta) {
  const double product = zeta * kappa2;
  if (!(product < 1.0))
    throw ConditionViolated("zeta * kappa_2 must be < 1");
  return 2.0 * product / (1.0 - product);
}

BoundReport theorem_bound(const LoewnerModel &model, const FrequencyData &data,
                          Complex s, double sigma) {
  if (!(sigma >= 0.0))
    throw InvalidRange("sigma must be >= 0");
  const Eigen::Index r = model.order();
  const double sqrt_r = std::sqrt(static_cast<double>(r));

  BoundReport rep;
  rep.s = s;
  rep.sigma = sigma;

  const Eigen::MatrixXcd pencil = s * model.E_hat - model.A_hat;
  const Eigen::VectorXd sv = singular_values(pencil);
  const double smin = sv(sv.size() - 1);
  if (!(smin > std::numeric_limits<double>::min()))
    throw SingularPencil("s E_hat - A_hat is singular at this point");
  rep.norm_pencil = sv(0);
  rep.kappa2 = sv(0) / smin;
  const double inv_norm = 1.0 / smin; // ||(sE-A)^{-1}||_2

  const auto [fe, fa] = structure_matrices(data, s);
  rep.norm_FE = spectral_norm(fe);
  rep.norm_FA = spectral_norm(fa);
  const double f_sum = rep.norm_FE + rep.norm_FA;

  const double b_norm = model.B_hat.norm();
  const double b_inf = model.B_hat.cwiseAbs().maxCoeff();
  const double c_norm = model.C_hat.norm();
  const double c_inf = model.C_hat.cwiseAbs().maxCoeff();

  rep.zeta_hat = std::max(4.0 * sqrt_r * f_sum / rep.norm_pencil,
                          4.0 * sqrt_r * b_inf / b_norm);
  rep.zeta = sigma * rep.zeta_hat;
  rep.nu = 4.0 * sqrt_r * f_sum * inv_norm;

  const Eigen::VectorXcd v = pencil.partialPivLu().solve(model.B_hat);
  const double v_norm = v.norm();
  rep.c1 = 2.0 * c_norm * v_norm * rep.kappa2;
  rep.c2 = 4.0 * sqrt_r * c_inf * b_norm * inv_norm;

  rep.sigma_max = (1.0 / rep.kappa2) *
                  std::min(rep.norm_pencil / (4.0 * sqrt_r * f_sum),
                           b_norm / (4.0 * sqrt_r * b_inf));
  rep.admissible = sigma > 0.0 && sigma < rep.sigma_max;

  const Complex h_hat = (model.C_hat * v)(0);
  rep.cos_angle = std::abs(h_hat) / std::max(c_norm * v_norm, kFloorAbs);
  rep.probability_floor = 1.0 - 4.0 * std::exp(-static_cast<double>(r) / 2.0);

  if (rep.admissible) {
    rep.bound_abs = sigma * (rep.c1 * rep.zeta_hat /
                                 (1.0 - sigma * rep.zeta_hat * rep.kappa2) +
                             rep.c2 * (1.0 + 4.0 * sigma * sqrt_r) /
                                 (1.0 - rep.nu * sigma));
    if (std::abs(h_hat) > kFloorAbs && rep.cos_angle > kFloorAbs) {
      const double zk = rep.zeta * rep.kappa2;
      rep.bound_rel =
          sigma / rep.cos_angle *
          (2.0 * rep.zeta_hat * rep.kappa2 /
               (1.0 - sigma * rep.zeta_hat * rep.kappa2) +
           4.0 * sqrt_r * (1.0 + zk) / (1.0 - zk) * c_inf / c_norm);
    }
  }
  return rep;
}

double relative_bound(const LoewnerModel &model, const FrequencyData &data,
                      Complex s, double sigma) {
  const BoundReport rep = theorem_bound(model, data, s, sigma);
  if (!(rep.zeta * rep.kappa2 < 1.0))
    throw ConditionViolated("sigma is not admissible at this point");
  const Complex h_hat = evaluate_model(model, s);
  if (std::abs(h_hat) <= kFloorAbs)
    throw ZeroOfTransferFunction("relative bound undefined at a zero of H");
  if (rep.cos_angle <= kFloorAbs)
    throw OrthogonalAngle("C_hat^* is orthogonal to the solution vector");
  const double zk = rep.zeta * rep.kappa2;
  const double c_norm = model.C_hat.norm();
  const double c_inf = model.C_hat.cwiseAbs().maxCoeff();
  const double sqrt_r = std::sqrt(static_cast<double>(model.order()));
  return sigma / rep.cos_angle *
         (2.0 * rep.zeta_hat * rep.kappa2 / (1.0 - zk) +
          4.0 * sqrt_r * (1.0 + zk) / (1.0 - zk) * c_inf / c_norm);
}

double h2_error(const LoewnerModel &m1, const LoewnerModel &m2,
                H2Diagnostics *diag) {
  if (m1.order() != m2.order())
    throw OrderMismatch("models must have equal order");
  const auto pr1 = poles_residues(m1);
  const auto pr2 = poles_residues(m2);
  for (const auto *pr : {&pr1, &pr2})
    for (const auto &[pole, residue] : *pr)
      if (!(pole.real() < 0.0))
        throw UnstableModel("pole with nonnegative real part");

  Complex sum(0.0, 0.0);
  for (const auto &[pole, residue] : pr1)
    sum += residue * (evaluate_model(m1, -pole) - evaluate_model(m2, -pole));
  for (const auto &[pole, residue] : pr2)
    sum += residue * (evaluate_model(m2, -pole) - evaluate_model(m1, -pole));

  const double scale = std::max(std::abs(sum), kFloorAbs);
  H2Diagnostics d;
  d.imag_residual = std::abs(sum.imag()) / scale;
  d.negative_residual = std::max(0.0, -sum.real()) / scale;
  d.consistent = d.imag_residual <= kH2ConsistencyTol &&
                 d.negative_residual <= kH2ConsistencyTol;
  if (diag)
    *diag = d;
  return std::sqrt(std::max(sum.real(), 0.0));
}

void write_bound_reports_csv(std::ostream &out,
                             const std::vector<BoundReport> &reports) {
  out << "re_s,im_s,sigma,kappa2,norm_pencil,norm_FE,norm_FA,zeta_hat,zeta,"
         "nu,c1,c2,sigma_max,admissible,bound_abs,bound_rel,cos_angle,"
         "probability_floor\n";
  char buf[640];
  for (const BoundReport &r : reports) {
    char abs_buf[40] = "";
    char rel_buf[40] = "";
    if (r.bound_abs)
      std::snprintf(abs_buf, sizeof abs_buf, "%.17g", *r.bound_abs);
    if (r.bound_rel)
      std::snprintf(rel_buf, sizeof rel_buf, "%.17g", *r.bound_rel);
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%.17g,%.17g,%d,%s,%s,%.17g,%.17g\n",
                  r.s.real(), r.s.imag(), r.sigma, r.kappa2, r.norm_pencil,
                  r.norm_FE, r.norm_FA, r.zeta_hat, r.zeta, r.nu, r.c1, r.c2,
                  r.sigma_max, r.admissible ? 1 : 0, abs_buf, rel_buf,
                  r.cos_angle, r.probability_floor);
    out << buf;
  }
}

} // namespace loewner
