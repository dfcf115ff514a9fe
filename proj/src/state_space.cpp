// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "loewner/state_space.hpp"
#include "loewner/errors.hpp"
#include "loewner/matrix_market.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>

namespace loewner {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Solves (sI - T) x = b for upper-Hessenberg T with partial pivoting.
Eigen::VectorXcd hessenberg_solve(const Eigen::MatrixXd &T, Complex s,
                                  const Eigen::VectorXcd &b) {
  const Eigen::Index n = T.rows();
  Eigen::MatrixXcd m = (-T).cast<Complex>();
  m.diagonal().array() += s;
  Eigen::VectorXcd x = b;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (std::abs(m(k + 1, k)) > std::abs(m(k, k))) {
      m.row(k).tail(n - k).swap(m.row(k + 1).tail(n - k));
      std::swap(x(k), x(k + 1));
    }
    if (m(k, k) == Complex(0))
      throw SingularPencil("pencil is singular at the evaluation point");
    const Complex mult = m(k + 1, k) / m(k, k);
    m.row(k + 1).tail(n - k - 1) -= mult * m.row(k).tail(n - k - 1);
    x(k + 1) -= mult * x(k);
  }
  const double dmax = m.diagonal().cwiseAbs().maxCoeff();
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    if (std::abs(m(k, k)) <= kEps * dmax)
      throw SingularPencil("pencil is singular at the evaluation point");
    Complex acc = x(k);
    if (k + 1 < n)
      acc -= (m.row(k).tail(n - k - 1) * x.tail(n - k - 1))(0);
    x(k) = acc / m(k, k);
  }
  return x;
}

} // namespace

StateSpaceSystem StateSpaceSystem::make(Eigen::MatrixXd E, Eigen::MatrixXd A,
                                        Eigen::VectorXd B,
                                        Eigen::RowVectorXd C) {
  const Eigen::Index n = A.rows();
  if (n < 1 || A.cols() != n || E.rows() != n || E.cols() != n)
    throw DimensionMismatch("E and A must be square of identical order");
  if (B.rows() != n || C.cols() != n)
    throw DimensionMismatch("B/C dimensions do not conform to the order");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(E);
  const auto &sv = svd.singularValues();
  if (!(sv(n - 1) > kRankTol * sv(0)))
    throw RankDeficientE("E is rank deficient (relative tol 1e-12)");
  return {std::move(E), std::move(A), std::move(B), std::move(C)};
}

Complex transfer_function(const StateSpaceSystem &sys, Complex s) {
  Eigen::MatrixXcd pencil = s * sys.E.cast<Complex>() - sys.A.cast<Complex>();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(pencil);
  if (!(lu.rcond() > kEps))
    throw SingularPencil("sE - A is numerically singular (s at/near a pole)");
  Eigen::VectorXcd x = lu.solve(sys.B.cast<Complex>());
  return (sys.C.cast<Complex>() * x)(0);
}

StateSpaceSystem make_penzl() {
  const Eigen::Index n = 1006;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  const double spirals[3] = {100.0, 200.0, 400.0};
  for (int k = 0; k < 3; ++k) {
    A(2 * k, 2 * k) = -1.0;
    A(2 * k, 2 * k + 1) = spirals[k];
    A(2 * k + 1, 2 * k) = -spirals[k];
    A(2 * k + 1, 2 * k + 1) = -1.0;
  }
  for (Eigen::Index i = 0; i < 1000; ++i)
    A(6 + i, 6 + i) = -static_cast<double>(i + 1);
  Eigen::VectorXd B = Eigen::VectorXd::Ones(n);
  B.head(6).setConstant(10.0);
  Eigen::RowVectorXd C = B.transpose();
  return StateSpaceSystem::make(Eigen::MatrixXd::Identity(n, n), std::move(A),
                                std::move(B), std::move(C));
}

StateSpaceSystem load_system(const std::filesystem::path &dir,
                             int input_index, int output_index) {
  const auto read_required = [&](const char *name) {
    const auto p = dir / name;
    if (!std::filesystem::exists(p))
      throw ParseError("missing required file " + p.string());
    return read_matrix_market(p);
  };
  Eigen::MatrixXd A = read_required("A.mtx");
  const Eigen::Index n = A.rows();
  if (A.cols() != n)
    throw DimensionMismatch("A.mtx is not square");

  Eigen::MatrixXd E;
  if (std::filesystem::exists(dir / "E.mtx"))
    E = read_matrix_market(dir / "E.mtx");
  else
    E = Eigen::MatrixXd::Identity(n, n);

  Eigen::MatrixXd Bfull = read_required("B.mtx");
  if (Bfull.rows() != n && Bfull.cols() == n)
    Bfull.transposeInPlace();
  Eigen::MatrixXd Cfull = read_required("C.mtx");
  if (Cfull.cols() != n && Cfull.rows() == n)
    Cfull.transposeInPlace();

  if (Bfull.rows() != n)
    throw DimensionMismatch("B.mtx row count does not match the order");
  if (Cfull.cols() != n)
    throw DimensionMismatch("C.mtx column count does not match the order");
  if (input_index < 1 || input_index > Bfull.cols())
    throw DimensionMismatch("input index out of range");
  if (output_index < 1 || output_index > Cfull.rows())
    throw DimensionMismatch("output index out of range");

  return StateSpaceSystem::make(std::move(E), std::move(A),
                                Bfull.col(input_index - 1),
                                Cfull.row(output_index - 1));
}

TransferFunctionSampler::TransferFunctionSampler(const StateSpaceSystem &sys)
    : order_(sys.order()), direct_(sys.order() <= 256) {
  if (direct_) {
    E_ = sys.E;
    A_ = sys.A;
    B_ = sys.B;
    C_ = sys.C;
    return;
  }
  Eigen::MatrixXd Ae;
  Eigen::VectorXd Be;
  if (sys.E.isIdentity(0.0)) {
    Ae = sys.A;
    Be = sys.B;
  } else {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.E);
    Ae = lu.solve(sys.A);
    Be = lu.solve(sys.B);
  }
  Eigen::HessenbergDecomposition<Eigen::MatrixXd> hess(Ae);
  T_ = hess.matrixH();
  Eigen::MatrixXd Q = hess.matrixQ();
  b_in_ = (Q.transpose() * Be).cast<Complex>();
  c_out_ = (sys.C * Q).cast<Complex>();
}

Complex TransferFunctionSampler::operator()(Complex s) const {
  if (direct_) {
    Eigen::MatrixXcd pencil = s * E_.cast<Complex>() - A_.cast<Complex>();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(pencil);
    if (!(lu.rcond() > kEps))
      throw SingularPencil(
          "sE - A is numerically singular (s at/near a pole)");
    Eigen::VectorXcd x = lu.solve(B_.cast<Complex>());
    return (C_.cast<Complex>() * x)(0);
  }
  Eigen::VectorXcd x = hessenberg_solve(T_, s, b_in_);
  return (c_out_ * x)(0);
}

std::vector<Complex>
TransferFunctionSampler::eval(const std::vector<Complex> &points) const {
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const Complex s : points)
    out.push_back((*this)(s));
  return out;
}

std::vector<PoleResidue>
pencil_poles_residues(const Eigen::MatrixXcd &E, const Eigen::MatrixXcd &A,
                      const Eigen::VectorXcd &B,
                      const Eigen::RowVectorXcd &C) {
  const Eigen::Index n = A.rows();
  if (n < 1 || A.cols() != n || E.rows() != n || E.cols() != n ||
      B.rows() != n || C.cols() != n)
    throw DimensionMismatch("pencil dimensions do not conform");

  {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(E);
    const auto &sv = svd.singularValues();
    if (!(sv(n - 1) > kRankTol * sv(0)))
      throw InfinitePole("E is singular within tolerance; poles at infinity");
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_e(E);

  Eigen::MatrixXcd M = lu_e.solve(A);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(M);
  if (eig.info() != Eigen::Success)
    throw Error("eigendecomposition of the pencil failed");
  const Eigen::VectorXcd lambda = eig.eigenvalues();
  const Eigen::MatrixXcd W = eig.eigenvectors();

  const double lam_max = lambda.cwiseAbs().maxCoeff();
  const double sep_tol = 1e-8 * lam_max;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(lambda(i) - lambda(j)) <= sep_tol)
        throw NonSimplePoles("pole separation below 1e-8 * max |pole|");

  Eigen::VectorXcd y = W.partialPivLu().solve(lu_e.solve(B));
  Eigen::RowVectorXcd cw = C * W;

  std::vector<PoleResidue> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = {lambda(i), cw(i) * y(i)};
  std::sort(out.begin(), out.end(), [](const PoleResidue &a,
                                       const PoleResidue &b) {
    if (a.pole.real() != b.pole.real())
      return a.pole.real() < b.pole.real();
    return a.pole.imag() < b.pole.imag();
  });
  return out;
}

std::vector<PoleResidue> poles_residues(const StateSpaceSystem &sys) {
  return pencil_poles_residues(sys.E.cast<Complex>(), sys.A.cast<Complex>(),
                               sys.B.cast<Complex>(), sys.C.cast<Complex>());
}

} // namespace loewner
