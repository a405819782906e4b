#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cwq/liealg.hpp"

namespace cwq {

/// Bloch-type coordinates x_1..x_{k^2-1} of a state of M_k(C).
/// Only the length is checked here; see membership().
struct StateCoordinates {
  int k = 2;
  Eigen::VectorXd x;

  StateCoordinates() = default;
  StateCoordinates(int k_, Eigen::VectorXd x_);
};

/// Hermitian, unit trace, positive semidefinite k x k matrix.
struct DensityMatrix {
  int k = 2;
  SquareMatrix rho;
};

struct Membership {
  bool member = false;
  double margin = 0.0;  ///< min_j a_j(x)
};

/// I/k + sum_j x_j b_j / tr(b_j^2). Throws NotAState outside Q_k.
DensityMatrix f_k(const StateCoordinates& coords, const SuBasis& basis);

/// Same affine map without the membership gate.
SquareMatrix affine_matrix(const StateCoordinates& coords, const SuBasis& basis);

/// x_j = tr(rho b_j).
StateCoordinates f_k_inverse(const DensityMatrix& rho, const SuBasis& basis);

/// Coefficients a_1..a_k of det(lambda I - rho) = sum_j (-1)^j a_j lambda^(k-j)
/// (a_0 = 1), from Newton's identities on the power sums tr(rho^m).
Eigen::VectorXd char_poly_coefficients(const StateCoordinates& coords, const SuBasis& basis);

/// a_j(x) >= -1e-12 for every j.
Membership membership(const StateCoordinates& coords, const SuBasis& basis);

/// Validates Hermiticity, trace and spectrum of a density matrix.
void check_density_matrix(const DensityMatrix& rho);

}  // namespace cwq
