#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cwq/errors.hpp"
#include "cwq/kernels.hpp"

namespace cwq {

/// Element of M_k(C).
using SquareMatrix = Eigen::MatrixXcd;

enum class Convention {
  Orthonormal,  ///< tr(b_i b_j) = delta_ij
  Pauli,        ///< k = 2 only, b_j = sigma_j, tr(b_i b_j) = 2 delta_ij
};

std::string_view to_string(Convention c);
Convention parse_convention(std::string_view text);

/// Real 3-index array C[r][s][l] with [b_r, b_s] = i sum_l C[r][s][l] b_l.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int size() const { return n_; }
  double operator()(int r, int s, int l) const { return data_[index(r, s, l)]; }
  double& operator()(int r, int s, int l) { return data_[index(r, s, l)]; }

  /// Frame-independent invariant sum_{rsl} C[r][s][l]^2.
  double squared_norm() const;

 private:
  std::size_t index(int r, int s, int l) const {
    return (static_cast<std::size_t>(r) * n_ + s) * n_ + l;
  }

  int n_ = 0;
  std::vector<double> data_;
};

/// Hermitian traceless generators of i*su(k) with their structure constants.
/// Indices are 0-based throughout the code: generator j here is b_{j+1}.
struct SuBasis {
  int k = 2;
  Convention convention = Convention::Orthonormal;
  std::vector<SquareMatrix> generators;
  StructureConstants structure;

  int dimension() const { return static_cast<int>(generators.size()); }
  /// tr(b_j b_j); 1 or 2 depending on the convention.
  double gram(int j) const;
};

/// Generalized Gell-Mann basis: symmetric pairs (i<j), antisymmetric pairs
/// (i<j), then the k-1 diagonal matrices, each rescaled per matrix to the
/// requested convention.
SuBasis build_su_basis(int k, Convention convention);

/// C[r][s][l] = -i tr([b_r, b_s] b_l) / tr(b_l b_l). Throws InconsistentBasis
/// when an imaginary residue above 1e-10 survives.
StructureConstants structure_constants(const std::vector<SquareMatrix>& generators);

/// max_{r,s} of the entrywise deviation between [b_r,b_s] and i sum_l C b_l.
double commutator_residual(const SuBasis& basis);

/// max |sum_m (C[a][b][m]C[m][c][d] + C[b][c][m]C[m][a][d] + C[c][a][m]C[m][b][d])|.
double jacobi_residual(const StructureConstants& c);

}  // namespace cwq
