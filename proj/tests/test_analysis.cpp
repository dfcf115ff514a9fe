// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "loewner/analysis.hpp"
#include "loewner/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <sstream>

using namespace loewner;

TEST_SUITE_BEGIN("analysis");

namespace {

FrequencyData scalar_data() {
  FrequencyData data;
  data.points.mu = {Complex(0.0, 1.0)};
  data.points.gamma = {Complex(0.0, -1.0)};
  data.h_mu = Eigen::VectorXcd::Constant(1, Complex(0.5, -0.5));
  data.h_gamma = Eigen::VectorXcd::Constant(1, Complex(0.5, 0.5));
  return data;
}

// pole-residue realization: E = I, A = diag(poles), B = 1, C = residues
LoewnerModel pr_model(const std::vector<Complex> &poles,
                      const std::vector<Complex> &residues) {
  const auto n = static_cast<Eigen::Index>(poles.size());
  LoewnerModel m;
  m.E_hat = Eigen::MatrixXcd::Identity(n, n);
  m.A_hat = Eigen::MatrixXcd::Zero(n, n);
  m.B_hat = Eigen::VectorXcd::Ones(n);
  m.C_hat.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m.A_hat(i, i) = poles[static_cast<std::size_t>(i)];
    m.C_hat(i) = residues[static_cast<std::size_t>(i)];
  }
  return m;
}

} // namespace

TEST_CASE("spectral norm basics") {
  CHECK(spectral_norm(Eigen::MatrixXcd::Identity(3, 3)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = Complex(3.0, 0.0);
  d(1, 1) = Complex(0.0, -4.0);
  CHECK(spectral_norm(d) == doctest::Approx(4.0).epsilon(1e-14));
  d(0, 1) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(spectral_norm(d), NonFiniteEntry);
}

TEST_CASE("spectral norm agrees with a power-iteration oracle") {
  std::mt19937_64 rng(51);
  Eigen::MatrixXcd m(8, 8);
  for (Eigen::Index i = 0; i < m.size(); ++i)
    m(i) = test_support::crand(rng);
  const double svd_norm = spectral_norm(m);
  const double pi_norm = test_support::power_iteration_norm(m);
  CHECK(std::abs(svd_norm - pi_norm) <= 1e-8 * svd_norm);
}

TEST_CASE("condition number basics") {
  const auto scalar_model = build_loewner(scalar_data());
  CHECK(condition_number(scalar_model, Complex(0.0)) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // s E - A = diag(1, 10) at s = 0
  LoewnerModel diag = pr_model({Complex(-1.0, 0.0), Complex(-10.0, 0.0)},
                               {Complex(1.0, 0.0), Complex(1.0, 0.0)});
  CHECK(condition_number(diag, Complex(0.0)) ==
        doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("condition number cross-checked against an inverse-norm oracle") {
  std::mt19937_64 rng(53);
  // dense pencil with conditioning controlled by construction: a
  // diagonal pole-residue model pushed through random dense transforms
  std::vector<Complex> poles, residues;
  for (int k = 1; k <= 4; ++k) {
    poles.emplace_back(-double(k), double(k));
    poles.emplace_back(-double(k), -double(k));
    residues.push_back(test_support::crand(rng));
    residues.push_back(std::conj(residues.back()));
  }
  const auto diag = pr_model(poles, residues);
  Eigen::MatrixXcd d1(8, 8), d2(8, 8);
  for (Eigen::Index i = 0; i < d1.size(); ++i) {
    d1(i) = test_support::crand(rng);
    d2(i) = test_support::crand(rng);
  }
  const auto model = apply_transform(diag, d1, d2);
  const Complex s(0.0, 2.0);
  REQUIRE(condition_number(model, s) < 1e8);
  const Eigen::MatrixXcd pencil = s * model.E_hat - model.A_hat;
  const double kappa_oracle =
      test_support::power_iteration_norm(pencil) *
      test_support::power_iteration_norm(pencil.inverse());
  CHECK(condition_number(model, s) ==
        doctest::Approx(kappa_oracle).epsilon(1e-6));
}

TEST_CASE("sigma_max scalar hand value and behavior") {
  const auto data = scalar_data();
  const auto model = build_loewner(data);
  // frozen: min{(1/2)/(2 sqrt 2), 1/4} = 1/(4 sqrt 2)
  CHECK(sigma_max(model, data, Complex(0.0)) ==
        doctest::Approx(0.17677669529663687).epsilon(1e-12));
  // at s = mu_1 the F_E row vanishes and the threshold grows
  CHECK(sigma_max(model, data, data.points.mu[0]) >
        sigma_max(model, data, Complex(0.0)));
}

TEST_CASE("sigma_max is invariant under uniform data scaling") {
  std::mt19937_64 rng(57);
  const auto data = test_support::random_frequency_data(5, rng);
  FrequencyData scaled = data;
  scaled.h_mu *= 10.0;
  scaled.h_gamma *= 10.0;
  const auto model = build_loewner(data);
  const auto scaled_model = build_loewner(scaled);
  const Complex s(0.0, 9.0);
  CHECK(sigma_max(scaled_model, scaled, s) ==
        doctest::Approx(sigma_max(model, data, s)).epsilon(1e-12));
}

TEST_CASE("deterministic perturbation bound") {
  CHECK(deterministic_pert_bound(2.0, 0.0) == 0.0);
  CHECK(deterministic_pert_bound(2.0, 0.1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(deterministic_pert_bound(2.0, 0.5), ConditionViolated);
}

TEST_CASE("perturbation bound dominates observed solve errors") {
  std::mt19937_64 rng(59);
  int held = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    Eigen::MatrixXcd g(n, n), dg(n, n);
    Eigen::VectorXcd b(n), db(n);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      g(i) = test_support::crand(rng);
      dg(i) = test_support::crand(rng);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      b(i) = test_support::crand(rng);
      db(i) = test_support::crand(rng);
    }
    const Eigen::VectorXd sv = g.bdcSvd().singularValues();
    const double kappa = sv(0) / (sv(n - 1));
    // scale perturbations so zeta kappa lands in (0, 0.9)
    const double zeta = test_support::urand(rng, 0.05, 0.9) / kappa;
    dg *= zeta * spectral_norm(g) / spectral_norm(dg);
    db *= zeta * b.norm() / db.norm();

    const Eigen::VectorXcd x = g.partialPivLu().solve(b);
    const Eigen::VectorXcd xt = (g + dg).partialPivLu().solve(b + db);
    const double observed = (xt - x).norm() / x.norm();
    if (observed <= deterministic_pert_bound(kappa, zeta))
      ++held;
  }
  CHECK(held == 100);
}

TEST_CASE("theorem bound on the scalar example") {
  const auto data = scalar_data();
  const auto model = build_loewner(data);
  const BoundReport rep = theorem_bound(model, data, Complex(0.0), 0.01);

  const double sqrt2 = std::sqrt(2.0);
  CHECK(rep.kappa2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.norm_pencil == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep.c1 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.c2 == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rep.zeta_hat == doctest::Approx(4.0 * sqrt2).epsilon(1e-12));
  CHECK(rep.nu == doctest::Approx(4.0 * sqrt2).epsilon(1e-12));
  CHECK(rep.zeta == doctest::Approx(0.04 * sqrt2).epsilon(1e-12));
  CHECK(rep.cos_angle == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.admissible);
  REQUIRE(rep.bound_abs.has_value());
  // frozen by the independent pre-build script
  CHECK(*rep.bound_abs == doctest::Approx(0.164015184949).epsilon(1e-9));
  CHECK(rep.probability_floor ==
        doctest::Approx(1.0 - 4.0 * std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("theorem bound limits and inadmissibility") {
  const auto data = scalar_data();
  const auto model = build_loewner(data);
  const double smax = sigma_max(model, data, Complex(0.0));

  // slope at sigma -> 0+ is c1 zeta_hat + c2
  const BoundReport tiny = theorem_bound(model, data, Complex(0.0), 1e-12);
  REQUIRE(tiny.bound_abs.has_value());
  CHECK(*tiny.bound_abs / 1e-12 ==
        doctest::Approx(tiny.c1 * tiny.zeta_hat + tiny.c2).epsilon(1e-9));

  // sigma = sigma_max is excluded by the strict inequality
  const BoundReport at_edge = theorem_bound(model, data, Complex(0.0), smax);
  CHECK_FALSE(at_edge.admissible);
  CHECK_FALSE(at_edge.bound_abs.has_value());
  CHECK_FALSE(theorem_bound(model, data, Complex(0.0), 0.0).admissible);
}

TEST_CASE("theorem bound grows strictly with sigma") {
  std::mt19937_64 rng(61);
  const auto data = test_support::random_frequency_data(4, rng);
  const auto model = build_loewner(data);
  const Complex s(0.0, 12.0);
  const double smax = sigma_max(model, data, s);
  double prev = 0.0;
  for (int k = 1; k <= 50; ++k) {
    const double sigma =
        smax * std::pow(10.0, -10.0 + 9.9 * (k - 1) / 49.0);
    const auto rep = theorem_bound(model, data, s, sigma);
    REQUIRE(rep.admissible);
    REQUIRE(rep.bound_abs.has_value());
    CHECK(*rep.bound_abs > prev);
    prev = *rep.bound_abs;
  }
}

TEST_CASE("relative bound: scalar collinearity and slope") {
  const auto data = scalar_data();
  const auto model = build_loewner(data);
  const double sigma = 1e-3;
  const BoundReport rep = theorem_bound(model, data, Complex(0.0), sigma);
  CHECK(rep.cos_angle == doctest::Approx(1.0).epsilon(1e-12));

  const double got = relative_bound(model, data, Complex(0.0), sigma);
  REQUIRE(rep.bound_rel.has_value());
  CHECK(got == doctest::Approx(*rep.bound_rel).epsilon(1e-12));
  // r = 1: ||C||_inf / ||C||_2 = 1; independent recomputation
  const double zk = rep.zeta * rep.kappa2;
  const double expected =
      sigma * (2.0 * rep.zeta_hat * rep.kappa2 / (1.0 - zk) +
               4.0 * (1.0 + zk) / (1.0 - zk));
  CHECK(got == doctest::Approx(expected).epsilon(1e-12));

  // slope at sigma -> 0
  const double tiny = relative_bound(model, data, Complex(0.0), 1e-13);
  CHECK(tiny / 1e-13 ==
        doctest::Approx(2.0 * rep.zeta_hat * rep.kappa2 + 4.0).epsilon(1e-9));
}

TEST_CASE("relative bound errors") {
  // H(s) = 1/(s+1) - 2/(s+2) vanishes at s = 0
  const auto model = pr_model({Complex(-1.0, 0.0), Complex(-2.0, 0.0)},
                              {Complex(1.0, 0.0), Complex(-2.0, 0.0)});
  CHECK(std::abs(evaluate_model(model, Complex(0.0))) < 1e-15);
  FrequencyData data;
  data.points.mu = {Complex(1.0, 1.0), Complex(2.0, 2.0)};
  data.points.gamma = {Complex(1.0, -1.0), Complex(2.0, -2.0)};
  data.h_mu.resize(2);
  data.h_gamma.resize(2);
  for (int i = 0; i < 2; ++i) {
    data.h_mu(i) = evaluate_model(model, data.points.mu[i]);
    data.h_gamma(i) = evaluate_model(model, data.points.gamma[i]);
  }
  CHECK_THROWS_AS(relative_bound(model, data, Complex(0.0), 1e-8),
                  ZeroOfTransferFunction);
  // far beyond sigma_max the condition fails first
  CHECK_THROWS_AS(relative_bound(model, data, Complex(0.0, 5.0), 1e6),
                  ConditionViolated);
}

TEST_CASE("angle identity |H| = ||C|| ||v|| |cos|") {
  std::mt19937_64 rng(63);
  const auto data = test_support::random_frequency_data(4, rng);
  const auto model = build_loewner(data);
  for (int k = 0; k < 20; ++k) {
    const Complex s(test_support::urand(rng, 0.5, 10.0),
                    test_support::urand(rng, -40.0, 40.0));
    const BoundReport rep = theorem_bound(model, data, s, 0.0);
    const Eigen::VectorXcd v =
        (s * model.E_hat - model.A_hat).partialPivLu().solve(model.B_hat);
    const double grammed = model.C_hat.norm() * v.norm() * rep.cos_angle;
    const double h_abs = std::abs(evaluate_model(model, s));
    CHECK(std::abs(grammed - h_abs) <= 1e-10 * h_abs);
  }
}

TEST_CASE("first-order error dominance for a fixed draw") {
  const auto data = scalar_data();
  const auto model = build_loewner(data);
  const auto draw = draw_noise(1, 17, 0);
  const Complex s(0.0, 0.0);
  const Complex h = evaluate_model(model, s);
  std::vector<double> ratios;
  for (double sigma = 1e-12; sigma <= 1.01e-8; sigma *= 10.0) {
    const auto noisy = build_loewner(pollute(data, sigma, draw));
    ratios.push_back(std::abs(h - evaluate_model(noisy, s)) / sigma);
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  CHECK(*hi / *lo < 1.01);
}

TEST_CASE("h2_error basics") {
  const auto m1 = pr_model({Complex(-1.0, 0.0)}, {Complex(1.0, 0.0)});
  const auto m2 = pr_model({Complex(-2.0, 0.0)}, {Complex(1.0, 0.0)});

  CHECK(h2_error(m1, m1) == 0.0);

  H2Diagnostics diag;
  const double dist = h2_error(m1, m2, &diag);
  CHECK(dist == doctest::Approx(0.2886751345948129).epsilon(1e-12));
  CHECK(diag.consistent);
  // formula is symmetric in the two models
  CHECK(h2_error(m2, m1) == doctest::Approx(dist).epsilon(1e-10));

  const auto unstable = pr_model({Complex(1.0, 0.0)}, {Complex(1.0, 0.0)});
  CHECK_THROWS_AS(h2_error(m1, unstable), UnstableModel);

  const auto wide = pr_model({Complex(-1.0, 0.0), Complex(-3.0, 0.0)},
                             {Complex(1.0, 0.0), Complex(1.0, 0.0)});
  CHECK_THROWS_AS(h2_error(m1, wide), OrderMismatch);

  const auto doubled = pr_model({Complex(-1.0, 0.0), Complex(-1.0, 0.0)},
                                {Complex(1.0, 0.0), Complex(1.0, 0.0)});
  CHECK_THROWS_AS(h2_error(doubled, wide), NonSimplePoles);
}

TEST_CASE("h2_error against the quadrature oracle") {
  std::mt19937_64 rng(67);
  const auto a = test_support::random_stable_model(4, rng);
  const auto b = test_support::random_stable_model(4, rng);
  const double formula = h2_error(a.model, b.model);
  std::vector<Complex> hints = a.poles;
  hints.insert(hints.end(), b.poles.begin(), b.poles.end());
  const double quad = test_support::h2_quadrature(a.model, b.model, hints);
  CHECK(std::abs(formula - quad) <= 1e-4 * quad);
}

TEST_CASE("bound report CSV serialization") {
  const auto data = scalar_data();
  const auto model = build_loewner(data);
  std::vector<BoundReport> reports;
  reports.push_back(theorem_bound(model, data, Complex(0.0), 0.01));
  reports.push_back(theorem_bound(model, data, Complex(0.0), 10.0));
  std::ostringstream out;
  write_bound_reports_csv(out, reports);
  std::istringstream in(out.str());
  std::string header, row_ok, row_bad;
  std::getline(in, header);
  std::getline(in, row_ok);
  std::getline(in, row_bad);
  CHECK(header.rfind("re_s,im_s,sigma,", 0) == 0);
  CHECK(row_ok.find(",1,") != std::string::npos);  // admissible flag
  CHECK(row_bad.find(",0,,,") != std::string::npos); // absent bounds
}

TEST_SUITE_END();
