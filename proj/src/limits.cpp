#include "cwq/limits.hpp"

#include <algorithm>
#include <cmath>

namespace cwq {

std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

Polynomial cw_classical_hamiltonian(double J, double B) {
  Polynomial h(2);
  h.add_term({0, 0, 2}, -0.5 * J);
  h.add_term({1, 0, 0}, -B);
  return h;
}

ClassicalGroundData minimize_classical(double J, double B) {
  if (!(J > 0.0) || B < 0.0) throw Error(ErrorKind::DimensionMismatch, "minimize_classical needs J > 0, B >= 0");
  ClassicalGroundData d;
  d.J = J;
  d.B = B;
  if (B < J) {
    const double x = B / J, z = std::sqrt(1.0 - x * x);
    d.minima.emplace_back(2, Eigen::Vector3d(x, 0.0, z));
    d.minima.emplace_back(2, Eigen::Vector3d(x, 0.0, -z));
    d.value = -0.5 * J - B * B / (2.0 * J);
  } else {
    d.minima.emplace_back(2, Eigen::Vector3d(1.0, 0.0, 0.0));
    d.value = -B;
  }
  return d;
}

double dgr_defect(const Polynomial& f, const Polynomial& g, Quantizer& q, int sign) {
  const auto qf = q(f), qg = q(g);
  const auto qb = q(poisson_bracket(f, g, q.basis(), sign));
  SparseOperator d = cplx(0.0, q.N()) * commutator(qf, qg).matrix - qb.matrix;
  d.prune(cplx(0.0));
  return operator_norm(d);
}

double dgr_defect(const Polynomial& f, const Polynomial& g, int N, const SuBasis& basis, int sign) {
  Quantizer q(basis, N);
  return dgr_defect(f, g, q, sign);
}

SweepResult dgr_sweep(const Polynomial& f, const Polynomial& g, const std::vector<int>& n_list,
                      const SuBasis& basis, int sign) {
  SweepResult out;
  out.label = "dgr defect";
  std::vector<double> xs, ys;
  for (int N : n_list) {
    const double d = dgr_defect(f, g, N, basis, sign);
    out.points.emplace_back(N, d);
    xs.push_back(N);
    ys.push_back(d);
  }
  out.fit = loglog_fit(xs, ys);
  return out;
}

double classical_expectation(const Polynomial& f, int N, double J, double B) {
  return q_expectation(f, ground_state(N, J, B)).real();
}

LimitSweep classical_limit_sweep(const Polynomial& f, const std::vector<int>& n_list, double J,
                                 double B) {
  const auto data = minimize_classical(J, B);
  LimitSweep out;
  cplx t{};
  for (const auto& m : data.minima) t += f.evaluate(m);
  out.target = (t / static_cast<double>(data.minima.size())).real();
  out.value.label = "expectation";
  out.error.label = "error";
  std::vector<double> xs, ys;
  for (int N : n_list) {
    const double v = classical_expectation(f, N, J, B);
    out.value.points.emplace_back(N, v);
    out.error.points.emplace_back(N, std::abs(v - out.target));
    xs.push_back(N);
    ys.push_back(std::abs(v - out.target));
  }
  out.error.fit = loglog_fit(xs, ys);
  return out;
}

double equivariance_check(const Polynomial& f, int N) {
  if (f.k() != 2) throw Error(ErrorKind::DimensionMismatch, "equivariance_check is defined for k = 2");
  Quantizer q(build_su_basis(2, Convention::Pauli), N);
  const auto lhs = q(f.reflect({1, -1, -1}));
  const auto rhs = flip_all(q(f));
  SparseOperator d = lhs.matrix - rhs.matrix;
  d.prune(cplx(0.0));
  return operator_norm(d);
}

double hamiltonian_gap_norm(int N, double J, double B) {
  const auto h = curie_weiss_tensor_hamiltonian(N, J, B);
  const auto q = quantize(cw_classical_hamiltonian(J, B), N, build_su_basis(2, Convention::Pauli));
  SparseOperator d = h.matrix - q.matrix;
  d.prune(cplx(0.0));
  return operator_norm(d);
}

namespace {

Int128 checked_mul(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorKind::Overflow, "permutation count exceeds 128 bits; use the ratio form");
  return r;
}

Int128 exact_factorial(int n) {
  Int128 r = 1;
  for (int i = 2; i <= n; ++i) r = checked_mul(r, i);
  return r;
}

Int128 exact_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int128 r = 1;
  for (int i = 1; i <= k; ++i) r = checked_mul(r, n - k + i) / i;
  return r;
}

double log_binom(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void check_order(int N, int L, int M, int K) {
  if (!(0 <= K && K <= L && L <= M && M <= N))
    throw Error(ErrorKind::OrderError, "need 0 <= K <= L <= M <= N");
}

}  // namespace

Int128 perm_count(int N, int L, int M, int K) {
  check_order(N, L, M, K);
  if (N - L - M + K < 0) return 0;
  // choose which of the M targets and which of the N-M identities receive the
  // L sources, then order sources and identities
  Int128 r = exact_factorial(N - L);
  r = checked_mul(r, exact_factorial(L));
  r = checked_mul(r, exact_binomial(M, K));
  r = checked_mul(r, exact_binomial(N - M, L - K));
  return r;
}

double c_n_ratio(int N, int L, int M) {
  if (N <= L + M) throw Error(ErrorKind::OrderError, "c_n_ratio needs N > L + M");
  return std::exp(std::lgamma(N - L + 1.0) + std::lgamma(N - M + 1.0) -
                  std::lgamma(N - L - M + 2.0) - std::lgamma(static_cast<double>(N)));
}

double p3_fraction(int N, int L, int M) {
  check_order(N, L, M, 0);
  std::vector<double> logs;
  for (int K = 2; K <= L; ++K) {
    if (N - L - M + K < 0) continue;
    logs.push_back(std::lgamma(N - L + 1.0) + std::lgamma(L + 1.0) + log_binom(M, K) +
                   log_binom(N - M, L - K) - std::lgamma(static_cast<double>(N)));
  }
  if (logs.empty()) return 0.0;
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - top);
  return std::exp(top) * acc;
}

NormSweep norm_convergence_sweep(const Polynomial& f, const std::vector<int>& n_list,
                                 const SuBasis& basis, int samples) {
  NormSweep out;
  out.norms.label = "operator norm";
  for (int N : n_list) out.norms.points.emplace_back(N, operator_norm(quantize(f, N, basis)));
  out.target = sup_norm_estimate(f, basis, samples);
  return out;
}

}  // namespace cwq
