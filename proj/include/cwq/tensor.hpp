#pragma once

#include <map>
#include <vector>

#include <Eigen/Sparse>

#include "cwq/liealg.hpp"
#include "cwq/polynomial.hpp"
#include "cwq/statespace.hpp"

namespace cwq {

using SparseOperator = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

/// Hard cap on the full tensor space.
inline constexpr long kTensorCap = 16384;

/// Operator on (C^k)^{(x)N}, dimension k^N. Stored sparse; dense() materializes.
/// Basis index digits are base k with site 1 the most significant digit.
struct TensorOperator {
  int k = 2;
  int N = 1;
  SparseOperator matrix;

  long dim() const { return matrix.rows(); }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
};

/// k^N, throwing SizeLimit above the cap.
long tensor_dimension(int k, int N);

TensorOperator identity_operator(int k, int N);

/// `a` on tensor slot `site` (1-based), identity elsewhere.
TensorOperator embed(const SquareMatrix& a, int site, int N);

/// S_N(a_1 (x) ... (x) a_N). Iterates distinct arrangements of the factor
/// multiset; identity factors are detected and left implicit.
TensorOperator symmetrize(const std::vector<SquareMatrix>& ops);

/// S_{M,N}(b) = S_N(b (x) I^{N-M}); b is expanded over words in an orthonormal
/// basis of M_k and symmetrized word by word. Needs k^M <= 1024.
TensorOperator inject(const TensorOperator& b, int N);

/// Q_{1/N} with a per-monomial cache.
class Quantizer {
 public:
  Quantizer(const SuBasis& basis, int N);

  const SuBasis& basis() const { return basis_; }
  int N() const { return N_; }

  /// Q_{1/N}(x^e) for a single unit monomial.
  const SparseOperator& monomial(const Exponents& e);
  TensorOperator operator()(const Polynomial& f);

 private:
  SuBasis basis_;
  int N_;
  long dim_;
  std::map<Exponents, SparseOperator> cache_;
};

TensorOperator quantize(const Polynomial& f, int N, const SuBasis& basis);

TensorOperator commutator(const TensorOperator& a, const TensorOperator& b);

/// Largest singular value. Hermitian input uses its own spectrum, otherwise
/// A*A. Dense eigensolve up to dimension 256, Lanczos above.
double operator_norm(const TensorOperator& a);
double operator_norm(const SparseOperator& a);

/// Max entrywise deviation between the two sides of the commutator lemma
/// for S_N. Needs N <= 6.
double commutator_lemma_check(const std::vector<SquareMatrix>& a,
                              const std::vector<SquareMatrix>& aprime);

/// tr(rho^{(x)N} A) contracted entry by entry, never forming rho^{(x)N}.
cplx product_state_functional(const StateCoordinates& omega, const SuBasis& basis,
                              const TensorOperator& a);

/// -(J/(2N^2)) (sum_i sigma_3(i))^2 - (B/N) sum_j sigma_1(j) on (C^2)^{(x)N}.
TensorOperator curie_weiss_tensor_hamiltonian(int N, double J, double B);

/// U_sigma A U_sigma^* for a site permutation (0-based, perm[s] = new site of s).
TensorOperator permute_sites(const TensorOperator& a, const std::vector<int>& perm);

/// U_N A U_N with U_N = sigma_1^{(x)N} (k = 2).
TensorOperator flip_all(const TensorOperator& a);

/// Dicke vector (k = 2, c(k) on k up spins) written in the 2^N product basis.
Eigen::VectorXcd dicke_to_tensor(const Eigen::VectorXcd& c);

/// <D_k'| A |D_k> over the Dicke basis, i.e. A compressed to Sym^N (k = 2).
Eigen::MatrixXcd compress_to_symmetric(const TensorOperator& a);

/// Max entrywise |A - B|.
double max_abs_difference(const SparseOperator& a, const SparseOperator& b);

}  // namespace cwq
