#pragma once

#include <Eigen/Dense>

#include "cwq/liealg.hpp"
#include "cwq/polynomial.hpp"

namespace cwq {

/// State in Sym^N(C^2); c(k) belongs to the Dicke state with k spins up.
struct DickeVector {
  int N = 0;
  Eigen::VectorXcd c;
  bool normalized = false;
};

struct CollectiveSpin {
  Eigen::MatrixXcd Sx, Sy, Sz;
};

/// Real symmetric tridiagonal matrix: diag(0..N), off(0..N-1) couples k and k+1.
struct Tridiagonal {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;

  Eigen::MatrixXd dense() const;
};

struct GroundStateResult {
  int N = 0;
  double J = 1.0;
  double B = 0.5;
  double energy = 0.0;
  double gap = 0.0;
  DickeVector state;
  bool purified = false;  ///< gap/|energy| fell below the degeneracy threshold
  double r_ratio = 1.0;   ///< peak-height ratio H_L/H_R of the raw eigenvector
  Eigen::VectorXd raw0, raw1;
};

inline constexpr double kDegeneracyThreshold = 1e-10;

/// Spin-N/2 matrices in the Dicke basis; Sz = diag(k - N/2).
CollectiveSpin collective_matrices(int N);

/// -(2J/N^2) Sz^2 - (2B/N) Sx restricted to Sym^N.
Tridiagonal cw_hamiltonian(int N, double J, double B);

/// Lowest eigenpair, projected onto the U_N-even sector, sign fixed so sum c > 0.
/// Throws PurificationFailure if a component falls below -1e-6.
GroundStateResult ground_state(int N, double J, double B);

/// c(k) -> c(N-k).
DickeVector u_parity(const DickeVector& v);

/// <Psi, Q_{1/N}(f) Psi> in Sym^N (k = 2). Pauli convention means b_j = sigma_j,
/// Orthonormal means sigma_j/sqrt(2).
cplx q_expectation(const Polynomial& f, const DickeVector& psi,
                   Convention convention = Convention::Pauli);
cplx q_expectation(const Polynomial& f, const GroundStateResult& gs,
                   Convention convention = Convention::Pauli);

/// <D^M_m'| sigma_1^{(x)a} (x) sigma_2^{(x)b} (x) sigma_3^{(x)c} |D^M_m>, M = a+b+c.
Eigen::MatrixXcd dicke_block(int a, int b, int c);

}  // namespace cwq
