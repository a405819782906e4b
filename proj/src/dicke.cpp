#include "cwq/dicke.hpp"

#include <cmath>
#include <map>
#include <string>

#include <Eigen/Eigenvalues>

#include "cwq/kernels.hpp"

namespace cwq {

namespace {

double log_binom(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

Eigen::VectorXd even_part(const Eigen::VectorXd& v) { return 0.5 * (v + v.reverse()); }

}  // namespace

Eigen::MatrixXd Tridiagonal::dense() const {
  const auto n = diag.size();
  Eigen::MatrixXd m = diag.asDiagonal();
  for (Eigen::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = off[i];
  return m;
}

CollectiveSpin collective_matrices(int N) {
  if (N < 1) throw Error(ErrorKind::InvalidDimension, "collective spin needs N >= 1");
  const cplx I(0.0, 1.0);
  Eigen::MatrixXcd up = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  for (int k = 0; k < N; ++k) up(k + 1, k) = std::sqrt(static_cast<double>(N - k) * (k + 1));
  CollectiveSpin s;
  s.Sx = 0.5 * (up + up.adjoint());
  s.Sy = (up - up.adjoint()) / (2.0 * I);
  s.Sz = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  for (int k = 0; k <= N; ++k) s.Sz(k, k) = k - 0.5 * N;
  return s;
}

Tridiagonal cw_hamiltonian(int N, double J, double B) {
  if (N < 1) throw Error(ErrorKind::InvalidDimension, "cw_hamiltonian needs N >= 1");
  Tridiagonal h;
  h.diag.resize(N + 1);
  h.off.resize(N);
  const double n = N;
  for (int k = 0; k <= N; ++k) {
    const double m = k - 0.5 * n;
    h.diag[k] = -(2.0 * J / (n * n)) * m * m;
  }
  for (int k = 0; k < N; ++k) h.off[k] = -(B / n) * std::sqrt((n - k) * (k + 1.0));
  return h;
}

GroundStateResult ground_state(int N, double J, double B) {
  const Tridiagonal h = cw_hamiltonian(N, J, B);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(h.diag, h.off, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::PurificationFailure, "tridiagonal eigensolve did not converge");

  GroundStateResult out;
  out.N = N;
  out.J = J;
  out.B = B;
  out.energy = es.eigenvalues()[0];
  out.gap = es.eigenvalues()[1] - es.eigenvalues()[0];
  out.raw0 = es.eigenvectors().col(0);
  out.raw1 = es.eigenvectors().col(1);
  out.purified = out.gap / std::abs(out.energy) < kDegeneracyThreshold;

  double left = 0.0, right = 0.0;
  for (int k = 0; k <= N; ++k) {
    if (2 * k < N) left = std::max(left, std::abs(out.raw0[k]));
    if (2 * k > N) right = std::max(right, std::abs(out.raw0[k]));
  }
  const double hi = std::max(left, right);
  out.r_ratio = hi > 0.0 ? std::min(left, right) / hi : 1.0;

  // P+ is applied even without degeneracy; it strips eps/gap contamination.
  Eigen::VectorXd c = even_part(out.raw0);
  if (c.norm() < 1e-6) c = even_part(out.raw1);
  if (c.norm() < 1e-6)
    throw Error(ErrorKind::PurificationFailure, "both lowest eigenvectors are U_N-odd");
  c.normalize();
  if (c.sum() < 0) c = -c;
  if (c.minCoeff() < -1e-6)
    throw Error(ErrorKind::PurificationFailure,
                "ground state has a negative component " + std::to_string(c.minCoeff()));

  out.state.N = N;
  out.state.c = c.cast<cplx>();
  out.state.normalized = true;
  return out;
}

DickeVector u_parity(const DickeVector& v) {
  DickeVector out = v;
  out.c = v.c.reverse();
  return out;
}

Eigen::MatrixXcd dicke_block(int a, int b, int c) {
  const int M = a + b + c;
  const cplx I(0.0, 1.0);
  // Pauli matrices in the (up, down) site basis; up is digit 0.
  const cplx s1[2][2] = {{0, 1}, {1, 0}};
  const cplx s2[2][2] = {{0, -I}, {I, 0}};
  const cplx s3[2][2] = {{1, 0}, {0, -1}};
  // dp(u', u): sum of matrix elements with u' ups in the row and u in the column.
  Eigen::MatrixXcd dp = Eigen::MatrixXcd::Zero(M + 1, M + 1);
  dp(0, 0) = 1.0;
  int placed = 0;
  auto absorb = [&](const cplx (&p)[2][2], int count) {
    for (int t = 0; t < count; ++t) {
      Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(M + 1, M + 1);
      for (int ur = 0; ur <= placed; ++ur)
        for (int uc = 0; uc <= placed; ++uc) {
          if (dp(ur, uc) == cplx{}) continue;
          for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
              if (p[x][y] != cplx{}) next(ur + (x == 0), uc + (y == 0)) += dp(ur, uc) * p[x][y];
        }
      dp = std::move(next);
      ++placed;
    }
  };
  absorb(s1, a);
  absorb(s2, b);
  absorb(s3, c);
  for (int r = 0; r <= M; ++r)
    for (int s = 0; s <= M; ++s) dp(r, s) *= std::exp(-0.5 * (log_binom(M, r) + log_binom(M, s)));
  return dp;
}

cplx q_expectation(const Polynomial& f, const DickeVector& psi, Convention convention) {
  if (f.k() != 2) throw Error(ErrorKind::DimensionMismatch, "q_expectation works on k = 2 polynomials");
  const int N = psi.N;
  if (psi.c.size() != N + 1) throw Error(ErrorKind::DimensionMismatch, "Dicke vector length differs from N+1");
  const double scale = convention == Convention::Pauli ? 1.0 : std::sqrt(0.5);

  std::map<int, Eigen::MatrixXd> weights;
  cplx total{};
  for (const auto& [e, coeff] : f.terms()) {
    const int M = total_degree(e);
    if (M == 0) {
      total += coeff * psi.c.squaredNorm();
      continue;
    }
    if (M > N) continue;
    auto it = weights.find(M);
    if (it == weights.end()) {
      Eigen::MatrixXd lw(N - M + 1, M + 1);
      for (int r = 0; r <= N - M; ++r)
        for (int m = 0; m <= M; ++m)
          lw(r, m) = 0.5 * (log_binom(M, m) + log_binom(N - M, r) - log_binom(N, r + m));
      it = weights.emplace(M, std::move(lw)).first;
    }
    const Eigen::MatrixXcd block = dicke_block(e[0], e[1], e[2]);
    kernels::BandedProblem p;
    p.N = N;
    p.M = M;
    p.coeffs = {psi.c.data(), static_cast<std::size_t>(N + 1)};
    p.block = &block;
    p.log_weight = &it->second;
    total += coeff * std::pow(scale, M) * kernels::omp::banded_expectation(p);
  }
  return total;
}

cplx q_expectation(const Polynomial& f, const GroundStateResult& gs, Convention convention) {
  return q_expectation(f, gs.state, convention);
}

}  // namespace cwq
