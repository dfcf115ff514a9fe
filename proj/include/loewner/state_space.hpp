// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOEWNER_STATE_SPACE_HPP
#define LOEWNER_STATE_SPACE_HPP

#include <Eigen/Dense>
#include <complex>
#include <filesystem>
#include <vector>

namespace loewner {

using Complex = std::complex<double>;

// Relative threshold for full-rank checks on E and transform factors.
inline constexpr double kRankTol = 1e-12;

// Denominator floor for relative errors; avoids 0/0 without distorting
// any representable value.
inline constexpr double kFloorAbs = 1e-300;

// Full-order LTI system E x' = A x + B u, y = C x with transfer function
// H(s) = C (sE - A)^{-1} B. Single input, single output.
struct StateSpaceSystem {
  Eigen::MatrixXd E;
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
  Eigen::RowVectorXd C;

  Eigen::Index order() const { return A.rows(); }

  // Validates dimensions and that E has full rank (smallest singular
  // value > kRankTol * largest). Throws DimensionMismatch/RankDeficientE.
  static StateSpaceSystem make(Eigen::MatrixXd E, Eigen::MatrixXd A,
                               Eigen::VectorXd B, Eigen::RowVectorXd C);
};

// H(s) via one partial-pivoted dense factorization of (sE - A); no
// explicit inverse. Throws SingularPencil at/near a pole.
Complex transfer_function(const StateSpaceSystem &sys, Complex s);

// Penzl benchmark: order 1006, E = I, A = blkdiag(A1, A2, A3, D) with
// A1 = [-1 100; -100 -1], A2 = [-1 200; -200 -1], A3 = [-1 400; -400 -1],
// D = diag(-1,...,-1000); B = C^T with six leading 10s and 1000 ones.
StateSpaceSystem make_penzl();

// Assembles a system from a directory of MatrixMarket files
// {E,A,B,C}.mtx; E.mtx may be absent (identity). When B/C carry several
// inputs/outputs, input_index/output_index (1-based) select the SISO
// channel.
StateSpaceSystem load_system(const std::filesystem::path &dir,
                             int input_index = 1, int output_index = 1);

// Evaluates H at many points. For small orders each point is a dense LU
// solve; for large orders the pencil is reduced once to Hessenberg form
// and each point costs one partially-pivoted O(n^2) Hessenberg solve.
// Both routes are backward-stable direct solvers and agree to roundoff.
class TransferFunctionSampler {
public:
  explicit TransferFunctionSampler(const StateSpaceSystem &sys);

  Complex operator()(Complex s) const;

  std::vector<Complex> eval(const std::vector<Complex> &points) const;

private:
  Eigen::Index order_;
  bool direct_;
  // direct path
  Eigen::MatrixXd E_, A_;
  Eigen::VectorXd B_;
  Eigen::RowVectorXd C_;
  // Hessenberg path: H(s) = c_out (sI - T)^{-1} b_in
  Eigen::MatrixXd T_;
  Eigen::VectorXcd b_in_;
  Eigen::RowVectorXcd c_out_;
};

struct PoleResidue {
  Complex pole;
  Complex residue;
};

// Poles and residues of C (sE - A)^{-1} B for a complex pencil with
// invertible E and simple finite poles. Sorted by (Re, Im) of the pole.
// Throws InfinitePole (E singular within tolerance) or NonSimplePoles
// (pairwise pole separation <= 1e-8 * max |pole|).
std::vector<PoleResidue>
pencil_poles_residues(const Eigen::MatrixXcd &E, const Eigen::MatrixXcd &A,
                      const Eigen::VectorXcd &B,
                      const Eigen::RowVectorXcd &C);

std::vector<PoleResidue> poles_residues(const StateSpaceSystem &sys);

} // namespace loewner

#endif
