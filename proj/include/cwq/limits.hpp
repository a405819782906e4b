#pragma once

#include <string>
#include <vector>

#include "cwq/dicke.hpp"
#include "cwq/poisson.hpp"
#include "cwq/statespace.hpp"
#include "cwq/sweep.hpp"
#include "cwq/tensor.hpp"

namespace cwq {

using Int128 = __int128;

std::string to_string(Int128 v);

/// h_0 = -(J z^2/2 + B x) with x = x_1, z = x_3.
Polynomial cw_classical_hamiltonian(double J, double B);

struct ClassicalGroundData {
  double J = 1.0;
  double B = 0.5;
  std::vector<StateCoordinates> minima;
  double value = 0.0;
};

/// Closed-form minima of h_0 on the Bloch ball.
ClassicalGroundData minimize_classical(double J, double B);

/// || iN[Q(f), Q(g)] - Q({f,g}) || on the full tensor space.
double dgr_defect(const Polynomial& f, const Polynomial& g, Quantizer& q,
                  int sign = kDefaultBracketSign);
double dgr_defect(const Polynomial& f, const Polynomial& g, int N, const SuBasis& basis,
                  int sign = kDefaultBracketSign);
SweepResult dgr_sweep(const Polynomial& f, const Polynomial& g, const std::vector<int>& n_list,
                      const SuBasis& basis, int sign = kDefaultBracketSign);

/// Re <Psi_N, Q_{1/N}(f) Psi_N> on the CW ground state (Pauli convention).
double classical_expectation(const Polynomial& f, int N, double J, double B);

struct LimitSweep {
  double target = 0.0;  ///< (f(x+) + f(x-))/2
  SweepResult value;
  SweepResult error;
};

LimitSweep classical_limit_sweep(const Polynomial& f, const std::vector<int>& n_list, double J,
                                 double B);

/// || Q(f o zeta) - U_N Q(f) U_N ||, zeta(x,y,z) = (x,-y,-z).
double equivariance_check(const Polynomial& f, int N);

/// || h^CW_{1/N} - Q_{1/N}(h_0) || on (C^2)^{(x)N}.
double hamiltonian_gap_norm(int N, double J, double B);

/// #P(N)_K = L! M! (N-L)! (N-M)! / (K! (L-K)! (M-K)! (N-L-M+K)!). Zero when
/// N-L-M+K < 0. Throws Overflow past 128 bits.
Int128 perm_count(int N, int L, int M, int K);

/// (N-L)! (N-M)! / ((N-L-M+1)! (N-1)!) via log-gamma.
double c_n_ratio(int N, int L, int M);

/// sum_{K=2..L} #P(N)_K / (N-1)!, summed in log space.
double p3_fraction(int N, int L, int M);

struct NormSweep {
  SweepResult norms;
  SupNormEstimate target;
};

NormSweep norm_convergence_sweep(const Polynomial& f, const std::vector<int>& n_list,
                                 const SuBasis& basis, int samples = 4096);

}  // namespace cwq
