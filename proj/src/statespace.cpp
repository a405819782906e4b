#include "cwq/statespace.hpp"

#include <algorithm>
#include <string>

namespace cwq {

StateCoordinates::StateCoordinates(int k_, Eigen::VectorXd x_) : k(k_), x(std::move(x_)) {
  if (x.size() != k * k - 1)
    throw Error(ErrorKind::DimensionMismatch,
                "coordinates for k=" + std::to_string(k) + " need " + std::to_string(k * k - 1) +
                    " entries, got " + std::to_string(x.size()));
}

namespace {

void require_same_k(const StateCoordinates& coords, const SuBasis& basis) {
  if (coords.k != basis.k || coords.x.size() != basis.dimension())
    throw Error(ErrorKind::DimensionMismatch, "coordinates and basis disagree on k");
}

}  // namespace

SquareMatrix affine_matrix(const StateCoordinates& coords, const SuBasis& basis) {
  require_same_k(coords, basis);
  const int k = basis.k;
  SquareMatrix rho = SquareMatrix::Identity(k, k) / static_cast<double>(k);
  for (int j = 0; j < basis.dimension(); ++j)
    rho += coords.x[j] / basis.gram(j) * basis.generators[j];
  return rho;
}

DensityMatrix f_k(const StateCoordinates& coords, const SuBasis& basis) {
  const auto m = membership(coords, basis);
  if (!m.member)
    throw Error(ErrorKind::NotAState,
                "coordinates lie outside Q_k (margin " + std::to_string(m.margin) + ")");
  return DensityMatrix{basis.k, affine_matrix(coords, basis)};
}

StateCoordinates f_k_inverse(const DensityMatrix& rho, const SuBasis& basis) {
  if (rho.k != basis.k) throw Error(ErrorKind::DimensionMismatch, "density matrix k differs from basis k");
  check_density_matrix(rho);
  Eigen::VectorXd x(basis.dimension());
  for (int j = 0; j < basis.dimension(); ++j) x[j] = (rho.rho * basis.generators[j]).trace().real();
  return StateCoordinates(basis.k, std::move(x));
}

Eigen::VectorXd char_poly_coefficients(const StateCoordinates& coords, const SuBasis& basis) {
  const int k = basis.k;
  const SquareMatrix rho = affine_matrix(coords, basis);

  std::vector<double> p(k + 1, 0.0);
  SquareMatrix power = SquareMatrix::Identity(k, k);
  for (int m = 1; m <= k; ++m) {
    power = power * rho;
    p[m] = power.trace().real();
  }

  // Newton: m e_m = sum_{i=1}^m (-1)^(i-1) e_{m-i} p_i
  std::vector<double> e(k + 1, 0.0);
  e[0] = 1.0;
  for (int m = 1; m <= k; ++m) {
    double acc = 0.0;
    for (int i = 1; i <= m; ++i) acc += ((i - 1) % 2 == 0 ? 1.0 : -1.0) * e[m - i] * p[i];
    e[m] = acc / m;
  }
  Eigen::VectorXd a(k);
  for (int j = 1; j <= k; ++j) a[j - 1] = e[j];
  return a;
}

Membership membership(const StateCoordinates& coords, const SuBasis& basis) {
  const auto a = char_poly_coefficients(coords, basis);
  Membership out;
  out.margin = a.minCoeff();
  out.member = out.margin >= -1e-12;
  return out;
}

void check_density_matrix(const DensityMatrix& rho) {
  const auto& m = rho.rho;
  if (m.rows() != rho.k || m.cols() != rho.k)
    throw Error(ErrorKind::DimensionMismatch, "density matrix has the wrong shape");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorKind::NotAState, "density matrix is not Hermitian");
  if (std::abs(m.trace() - cplx(1.0, 0.0)) > 1e-12)
    throw Error(ErrorKind::NotAState, "density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<SquareMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw Error(ErrorKind::NotAState, "density matrix has a negative eigenvalue");
}

}  // namespace cwq
