#pragma once

// Hot loops of the library, each in two flavours with identical signatures:
//   kernels::serial  plain loops, kept as the reference for tests
//   kernels::omp     OpenMP-parallel versions used by the modules
// Reductions in the omp flavour use fixed blocks plus a fixed pairwise tree,
// so results are bitwise independent of the thread count.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cwq {

using cplx = std::complex<double>;

namespace kernels {

inline constexpr std::size_t kReductionBlock = 256;

/// Compressed sparse rows; columns sorted inside each row.
struct CsrMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<cplx> val;
};

struct SiteFactor {
  int site;
  int factor;
};

/// Symmetrized elementary tensor: weight * sum over arrangements of the
/// tensor product that puts factors[f] on `site` and the identity elsewhere.
/// Site 0 is the most significant base-k digit of a basis index.
struct WordPlan {
  int k = 2;
  int sites = 1;
  std::vector<Eigen::MatrixXcd> factors;
  std::vector<std::vector<SiteFactor>> arrangements;
  cplx weight{1.0, 0.0};
};

/// Banded Dicke-space contraction used for <Psi, S_{M,N}(w) Psi>.
/// `block(m', m)` is <D^M_m'| w |D^M_m>; `log_weight(r, m)` is log W for the
/// split k = r + m (entries that must vanish hold -inf).
struct BandedProblem {
  int N = 0;
  int M = 0;
  std::span<const cplx> coeffs;
  const Eigen::MatrixXcd* block = nullptr;
  const Eigen::MatrixXd* log_weight = nullptr;
};

/// Husimi-type density (norm/(4 pi)) * |<Psi, Omega>|^(2 ell) on a product grid.
/// Output is row-major: index = theta_index * phis.size() + phi_index.
struct HusimiGrid {
  int N = 0;
  double ell = 1.0;
  std::span<const cplx> coeffs;
  std::span<const double> thetas;
  std::span<const double> phis;
};

namespace serial {
double sum(std::span<const double> values);
cplx sum(std::span<const cplx> values);
double weighted_sum(std::span<const double> weights, std::span<const double> values);
void sparse_matvec(const CsrMatrix& a, std::span<const cplx> x, std::span<cplx> y);
CsrMatrix assemble_symmetrized(const WordPlan& plan);
cplx banded_expectation(const BandedProblem& problem);
std::vector<double> husimi_density(const HusimiGrid& grid);
}  // namespace serial

namespace omp {
double sum(std::span<const double> values);
cplx sum(std::span<const cplx> values);
double weighted_sum(std::span<const double> weights, std::span<const double> values);
void sparse_matvec(const CsrMatrix& a, std::span<const cplx> x, std::span<cplx> y);
CsrMatrix assemble_symmetrized(const WordPlan& plan);
cplx banded_expectation(const BandedProblem& problem);
std::vector<double> husimi_density(const HusimiGrid& grid);
}  // namespace omp

/// log of sqrt(C(N,k)) * cos(theta/2)^k * sin(theta/2)^(N-k), with 0^0 = 1.
/// Returns -inf where the factor vanishes.
void coherent_log_magnitudes(int N, double theta, std::span<double> out);

/// Sets the OpenMP worker count; `threads <= 0` leaves the runtime default.
void set_threads(int threads);
int max_threads();

}  // namespace kernels
}  // namespace cwq
