// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOEWNER_TESTS_TEST_SUPPORT_HPP
#define LOEWNER_TESTS_TEST_SUPPORT_HPP

#include "loewner/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <vector>

namespace test_support {

using loewner::Complex;

inline double urand(std::mt19937_64 &rng, double lo, double hi) {
  return lo + (hi - lo) * std::uniform_real_distribution<double>()(rng);
}

inline Complex crand(std::mt19937_64 &rng, double scale = 1.0) {
  return {scale * urand(rng, -1.0, 1.0), scale * urand(rng, -1.0, 1.0)};
}

// Stable SISO system with log-spread real poles and O(1) input/output
// weights; well conditioned for sampling anywhere off the negative axis.
inline loewner::StateSpaceSystem random_stable_system(int order,
                                                      std::mt19937_64 &rng) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(order, order);
  for (int i = 0; i < order; ++i)
    a(i, i) = -std::pow(10.0, urand(rng, -0.5, 2.0));
  Eigen::VectorXd b(order), c(order);
  for (int i = 0; i < order; ++i) {
    b(i) = urand(rng, 0.5, 1.5);
    c(i) = urand(rng, 0.5, 1.5);
  }
  return loewner::StateSpaceSystem::make(
      Eigen::MatrixXd::Identity(order, order), std::move(a), std::move(b),
      c.transpose());
}

// 2r distinct interpolation points away from the negative real axis.
inline loewner::InterpolationSet random_points(int r, std::mt19937_64 &rng) {
  loewner::InterpolationSet pts;
  for (int i = 0; i < r; ++i) {
    pts.mu.emplace_back(urand(rng, 0.2, 30.0), urand(rng, 1.0, 50.0));
    pts.gamma.emplace_back(urand(rng, 0.2, 30.0), -urand(rng, 1.0, 50.0));
  }
  pts.validate();
  return pts;
}

inline loewner::FrequencyData random_frequency_data(int r,
                                                    std::mt19937_64 &rng) {
  const auto sys = random_stable_system(2 * r + 3, rng);
  return loewner::sample_data(sys, random_points(r, rng));
}

// Conjugate-symmetric stable model in pole-residue form: E = I,
// A = diag(poles), B = ones, C = residues. Returns the poles too so
// quadrature oracles can place breakpoints.
struct SyntheticModel {
  loewner::LoewnerModel model;
  std::vector<Complex> poles;
};

inline SyntheticModel random_stable_model(int order, std::mt19937_64 &rng) {
  std::vector<Complex> poles, residues;
  int remaining = order;
  while (remaining >= 2) {
    const Complex lam(-urand(rng, 0.4, 3.0), urand(rng, 0.4, 3.0));
    const Complex phi = crand(rng, 0.7);
    poles.push_back(lam);
    poles.push_back(std::conj(lam));
    residues.push_back(phi);
    residues.push_back(std::conj(phi));
    remaining -= 2;
  }
  if (remaining == 1) {
    poles.emplace_back(-urand(rng, 0.4, 3.0), 0.0);
    residues.emplace_back(urand(rng, 0.2, 1.0), 0.0);
  }
  SyntheticModel out;
  const int n = order;
  out.model.E_hat = Eigen::MatrixXcd::Identity(n, n);
  out.model.A_hat = Eigen::MatrixXcd::Zero(n, n);
  out.model.B_hat = Eigen::VectorXcd::Ones(n);
  out.model.C_hat.resize(n);
  for (int i = 0; i < n; ++i) {
    out.model.A_hat(i, i) = poles[static_cast<std::size_t>(i)];
    out.model.C_hat(i) = residues[static_cast<std::size_t>(i)];
  }
  out.poles = std::move(poles);
  return out;
}

// Largest singular value by power iteration on M^H M; independent of the
// SVD route used by the library.
inline double power_iteration_norm(const Eigen::MatrixXcd &m,
                                   int iters = 3000) {
  std::mt19937_64 rng(7);
  Eigen::VectorXcd v(m.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = crand(rng);
  v.normalize();
  double sigma = 0.0;
  for (int k = 0; k < iters; ++k) {
    Eigen::VectorXcd w = m.adjoint() * (m * v);
    sigma = std::sqrt(w.norm());
    if (w.norm() == 0.0)
      return 0.0;
    v = w / w.norm();
  }
  return sigma;
}

template <typename F>
double adaptive_simpson_rec(const F &f, double a, double b, double fa,
                            double fm, double fb, double whole, double tol,
                            int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

template <typename F>
double adaptive_simpson(const F &f, double a, double b, double tol,
                        int depth = 40) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Quadrature oracle for the H2 distance: integrates
// |H1(iw) - H2(iw)|^2 / (2 pi) over w in [-1e6, 1e6] with breakpoints at
// the hinted pole imaginary parts.
inline double h2_quadrature(const loewner::LoewnerModel &m1,
                            const loewner::LoewnerModel &m2,
                            const std::vector<Complex> &pole_hints) {
  const auto f = [&](double w) {
    const Complex s(0.0, w);
    const Complex d = loewner::evaluate_model(m1, s) -
                      loewner::evaluate_model(m2, s);
    return std::norm(d) / (2.0 * std::numbers::pi);
  };
  std::vector<double> cuts = {-1e6, -1e3, -50.0, 50.0, 1e3, 1e6};
  for (const Complex p : pole_hints) {
    cuts.push_back(p.imag());
    cuts.push_back(-p.imag());
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  double coarse = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    coarse += std::abs((cuts[i + 1] - cuts[i]) *
                       f(0.5 * (cuts[i] + cuts[i + 1])));
  const double tol = 1e-9 * std::max(coarse, 1e-12);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += adaptive_simpson(f, cuts[i], cuts[i + 1], tol);
  return std::sqrt(std::max(total, 0.0));
}

// Unique scratch directory, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string &tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("loewner_" + tag + "_" + std::to_string(++counter));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const std::filesystem::path &path() const { return path_; }

private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace test_support

#endif
