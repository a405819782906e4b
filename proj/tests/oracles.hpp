#pragma once

// Brute-force references built from dense Kronecker products. Only usable for
// a handful of sites.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat sigma(int j) {
  Mat m = Mat::Zero(2, 2);
  const cplx i(0.0, 1.0);
  if (j == 1) m << 0, 1, 1, 0;
  if (j == 2) m << 0, -i, i, 0;
  if (j == 3) m << 1, 0, 0, -1;
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

inline Mat kron_all(const std::vector<Mat>& ops) {
  Mat out = Mat::Identity(1, 1);
  for (const auto& o : ops) out = kron(out, o);
  return out;
}

/// (1/N!) sum over all N! orderings of the factors.
inline Mat symmetrize(std::vector<Mat> ops) {
  const int N = static_cast<int>(ops.size());
  std::vector<int> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  Mat acc;
  double count = 0;
  do {
    std::vector<Mat> placed(N);
    for (int s = 0; s < N; ++s) placed[perm[s]] = ops[s];
    Mat t = kron_all(placed);
    if (count == 0) acc = Mat::Zero(t.rows(), t.cols());
    acc += t;
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc / count;
}

/// Sum over sites of a single-site operator.
inline Mat site_sum(const Mat& a, int N) {
  const long k = a.rows();
  Mat acc = Mat::Zero(static_cast<long>(std::pow(k, N)), static_cast<long>(std::pow(k, N)));
  for (int s = 0; s < N; ++s) {
    std::vector<Mat> ops(N, Mat::Identity(k, k));
    ops[s] = a;
    acc += kron_all(ops);
  }
  return acc;
}

inline Mat random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat m(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) m(r, c) = cplx(g(rng), g(rng));
  return m;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle

namespace oracle {

/// Unitary moving the factor on site s to site perm[s] (k-ary digits, site 0 most significant).
inline Mat site_permutation(int k, const std::vector<int>& perm) {
  const int N = static_cast<int>(perm.size());
  const long dim = static_cast<long>(std::pow(k, N));
  Mat P = Mat::Zero(dim, dim);
  std::vector<int> d(N), e(N);
  for (long idx = 0; idx < dim; ++idx) {
    long t = idx;
    for (int s = N - 1; s >= 0; --s) {
      d[s] = static_cast<int>(t % k);
      t /= k;
    }
    for (int s = 0; s < N; ++s) e[perm[s]] = d[s];
    long out = 0;
    for (int s = 0; s < N; ++s) out = out * k + e[s];
    P(out, idx) = 1.0;
  }
  return P;
}

/// Dicke state with `up` digits equal to 0 among N qubits, in the 2^N basis.
inline Eigen::VectorXcd dicke(int N, int up) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(1L << N);
  for (long idx = 0; idx < (1L << N); ++idx)
    if (N - __builtin_popcountl(idx) == up) v[idx] = 1.0;
  return v.normalized();
}

}  // namespace oracle
