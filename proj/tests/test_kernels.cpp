#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "cwq/kernels.hpp"
#include "oracles.hpp"

using namespace cwq;
using namespace cwq::kernels;

namespace {

const int kThreadCounts[] = {1, 2, 3, 7};

std::vector<double> random_doubles(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng) * std::pow(10.0, 6 * u(rng));
  return v;
}

std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed) {
  const auto re = random_doubles(n, seed), im = random_doubles(n, seed + 1);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], im[i]};
  return v;
}

bool same_csr(const CsrMatrix& a, const CsrMatrix& b) {
  return a.rows == b.rows && a.cols == b.cols && a.row_ptr == b.row_ptr && a.col == b.col && a.val == b.val;
}

WordPlan sample_plan() {
  std::mt19937_64 rng(11);
  WordPlan p;
  p.k = 2;
  p.sites = 6;
  p.factors = {oracle::random_matrix(2, rng), oracle::random_matrix(2, rng)};
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      if (a != b) p.arrangements.push_back({{a, 0}, {b, 1}});
  p.weight = 1.0 / 30.0;
  return p;
}

}  // namespace

TEST_CASE("omp sums are bitwise stable across thread counts") {
  const auto v = random_doubles(10007, 1);
  const auto w = random_doubles(10007, 2);
  const auto z = random_complex(5003, 3);
  set_threads(1);
  const double s1 = omp::sum(v), ws1 = omp::weighted_sum(w, v);
  const cplx z1 = omp::sum(z);
  for (int t : kThreadCounts) {
    set_threads(t);
    CHECK(omp::sum(v) == s1);
    CHECK(omp::weighted_sum(w, v) == ws1);
    CHECK(omp::sum(z) == z1);
  }
  double l1 = 0.0;
  for (double x : v) l1 += std::abs(x);
  CHECK(std::abs(serial::sum(v) - s1) <= 1e-14 * l1);
}

TEST_CASE("sparse matvec agrees with dense product") {
  std::mt19937_64 rng(5);
  const int n = 300;
  oracle::Mat dense = oracle::Mat::Zero(n, n);
  CsrMatrix a;
  a.rows = a.cols = n;
  a.row_ptr.push_back(0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int r = 0; r < n; ++r) {
    std::vector<int> cols;
    for (int j = 0; j < 5; ++j) cols.push_back(pick(rng));
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    for (int c : cols) {
      const cplx v(r + 0.5, c - 1.0);
      a.col.push_back(c);
      a.val.push_back(v);
      dense(r, c) = v;
    }
    a.row_ptr.push_back(static_cast<int>(a.col.size()));
  }
  const auto x = random_complex(n, 9);
  std::vector<cplx> ys(n), yo(n);
  serial::sparse_matvec(a, x, ys);
  const Eigen::VectorXcd ref = dense * Eigen::Map<const Eigen::VectorXcd>(x.data(), n);
  for (int t : kThreadCounts) {
    set_threads(t);
    omp::sparse_matvec(a, x, yo);
    CHECK(yo == ys);
  }
  for (int r = 0; r < n; ++r) CHECK(std::abs(ys[r] - ref[r]) <= 1e-9 * (1 + std::abs(ref[r])));
}

TEST_CASE("symmetrized assembly: serial, omp and Kronecker sum agree") {
  const auto plan = sample_plan();
  const auto s = serial::assemble_symmetrized(plan);
  for (int t : kThreadCounts) {
    set_threads(t);
    CHECK(same_csr(omp::assemble_symmetrized(plan), s));
  }
  oracle::Mat ref = oracle::Mat::Zero(64, 64);
  for (const auto& arr : plan.arrangements) {
    std::vector<oracle::Mat> ops(6, oracle::Mat::Identity(2, 2));
    for (const auto& sf : arr) ops[sf.site] = plan.factors[sf.factor];
    ref += oracle::kron_all(ops);
  }
  ref *= plan.weight;
  double err = 0.0;
  for (int r = 0; r < s.rows; ++r) {
    oracle::Mat row = oracle::Mat::Zero(1, 64);
    for (int p = s.row_ptr[r]; p < s.row_ptr[r + 1]; ++p) row(0, s.col[p]) = s.val[p];
    err = std::max(err, oracle::max_abs(row - ref.row(r)));
  }
  CHECK(err <= 1e-13);
}

TEST_CASE("banded expectation: omp matches serial to rounding, bitwise across threads") {
  const int N = 40, M = 3;
  const auto c = random_complex(N + 1, 21);
  std::mt19937_64 rng(4);
  const Eigen::MatrixXcd block = oracle::random_matrix(M + 1, rng);
  Eigen::MatrixXd lw(N - M + 1, M + 1);
  for (int r = 0; r <= N - M; ++r)
    for (int m = 0; m <= M; ++m) lw(r, m) = (r + m) % 7 == 0 ? -std::numeric_limits<double>::infinity() : -0.01 * r;
  BandedProblem p{N, M, c, &block, &lw};
  const cplx ref = serial::banded_expectation(p);
  set_threads(1);
  const cplx o1 = omp::banded_expectation(p);
  CHECK(std::abs(o1 - ref) <= 1e-12 * std::abs(ref));
  for (int t : kThreadCounts) {
    set_threads(t);
    CHECK(omp::banded_expectation(p) == o1);
  }
}

TEST_CASE("husimi grid: serial and omp are identical, values match direct overlap") {
  const int N = 12;
  const auto c = random_complex(N + 1, 31);
  std::vector<double> th, ph;
  for (int i = 0; i < 17; ++i) th.push_back(i * M_PI / 16);
  for (int i = 0; i < 23; ++i) ph.push_back(-M_PI + 2 * M_PI * i / 23);
  HusimiGrid g{N, 0.5, c, th, ph};
  const auto s = serial::husimi_density(g);
  for (int t : kThreadCounts) {
    set_threads(t);
    CHECK(omp::husimi_density(g) == s);
  }
  // direct sum over c(k) conj * sqrt(C(N,k)) cos^k sin^(N-k) e^{i(N-k)phi}
  for (std::size_t it = 0; it < th.size(); it += 5)
    for (std::size_t ip = 0; ip < ph.size(); ip += 7) {
      cplx acc{};
      for (int k = 0; k <= N; ++k)
        acc += std::conj(c[k]) * std::sqrt(oracle::binomial(N, k)) * std::pow(std::cos(th[it] / 2), k) *
               std::pow(std::sin(th[it] / 2), N - k) * std::polar(1.0, (N - k) * ph[ip]);
      const double ref = (N + 1) / (4 * M_PI) * std::pow(std::norm(acc), 0.5);
      CHECK(s[it * ph.size() + ip] == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("coherent log magnitudes handle the poles") {
  std::vector<double> out(6);
  coherent_log_magnitudes(5, 0.0, out);
  CHECK(out[5] == 0.0);
  CHECK(std::isinf(out[0]));
  coherent_log_magnitudes(5, M_PI, out);
  CHECK(std::abs(out[0]) < 1e-15);
  CHECK(out[5] < -100.0);
}
