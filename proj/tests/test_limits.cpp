#include <doctest.h>

#include <numeric>
#include <random>

#include "cwq/limits.hpp"
#include "oracles.hpp"
#include "random_poly.hpp"

using namespace cwq;
using oracle::Mat;

namespace {

double spectral_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()[0];
}

}  // namespace

TEST_CASE("classical minimizers agree with a grid search on the sphere") {
  for (auto [J, B] : {std::pair{1.0, 0.5}, {1.0, 0.2}, {1.0, 1.5}}) {
    const auto h = cw_classical_hamiltonian(J, B);
    const auto data = minimize_classical(J, B);
    double best = 1e300;
    for (int i = 0; i <= 2000; ++i)
      for (int j = 0; j < 200; ++j) {
        const double t = M_PI * i / 2000, p = 2 * M_PI * j / 200;
        const Eigen::Vector3d x(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t));
        best = std::min(best, h.evaluate(Eigen::VectorXd(x)).real());
      }
    CHECK(data.value == doctest::Approx(best).epsilon(1e-5));
    for (const auto& m : data.minima) CHECK(h.evaluate(m).real() == doctest::Approx(data.value).epsilon(1e-14));
    CHECK(data.minima.size() == (B < J ? 2u : 1u));
  }
}

TEST_CASE("DGR defect vanishes on linear pairs and matches a dense oracle otherwise") {
  const auto b = build_su_basis(2, Convention::Pauli);
  const auto x1 = Polynomial::variable(2, 0), x2 = Polynomial::variable(2, 1);
  for (int N = 2; N <= 8; ++N) CHECK(dgr_defect(x1, x2, N, b) < 1e-12);
  const Mat I = Mat::Identity(2, 2);
  const Mat q33 = oracle::symmetrize({oracle::sigma(3), oracle::sigma(3), I, I});
  const Mat q11 = oracle::symmetrize({oracle::sigma(1), oracle::sigma(1), I, I});
  const Mat q123 = oracle::symmetrize({oracle::sigma(1), oracle::sigma(2), oracle::sigma(3), I});
  // {x3^2, x1^2} = -8 x1 x2 x3
  const Mat d = cplx(0, 4) * (q33 * q11 - q11 * q33) + 8.0 * q123;
  CHECK(dgr_defect(parse_polynomial(2, "x3^2"), parse_polynomial(2, "x1^2"), 4, b) ==
        doctest::Approx(spectral_norm(d)).epsilon(1e-10));
}

TEST_CASE("classical expectation equals the tensor matrix element") {
  const auto b = build_su_basis(2, Convention::Pauli);
  std::mt19937_64 rng(3);
  for (int N : {3, 7}) {
    const auto gs = ground_state(N, 1.0, 0.5);
    const Eigen::VectorXcd v = dicke_to_tensor(gs.state.c);
    Polynomial f = random_polynomial(2, 3, rng);
    f = f + f.conj();
    const double ref = v.dot(quantize(f, N, b).dense() * v).real();
    CHECK(classical_expectation(f, N, 1.0, 0.5) == doctest::Approx(ref).epsilon(1e-11));
  }
}

TEST_CASE("ground-state expectations approach the classical average") {
  const auto s = classical_limit_sweep(parse_polynomial(2, "x1"), {100, 200, 400, 800}, 1.0, 0.5);
  CHECK(s.target == doctest::Approx(0.5));
  CHECK(s.error.strictly_decreasing());
  CHECK(s.error.points.back().second < 2e-3);
}

TEST_CASE("U_N equivariance of the quantization") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) CHECK(equivariance_check(random_polynomial(2, 3, rng), 5) < 1e-12);
}

TEST_CASE("Hamiltonian gap norm has the closed form (1 - m^2/N^2) J/(2(N-1))") {
  for (int N = 2; N <= 10; ++N) {
    const int m = N % 2;
    const double ref = 0.5 * (1.0 - double(m * m) / (N * N)) / (N - 1);
    CHECK(hamiltonian_gap_norm(N, 1.0, 0.5) == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("permutation counts match brute-force enumeration") {
  const int N = 7;
  for (int L = 0; L <= 3; ++L)
    for (int M = L; M <= 5; ++M) {
      std::vector<long> counts(L + 1, 0);
      std::vector<int> perm(N);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        int K = 0;
        for (int i = 0; i < L; ++i) K += perm[i] < M;
        ++counts[K];
      } while (std::next_permutation(perm.begin(), perm.end()));
      for (int K = 0; K <= L; ++K) CHECK(static_cast<long>(perm_count(N, L, M, K)) == counts[K]);
    }
}

TEST_CASE("Chu-Vandermonde: counts sum to N!") {
  for (int N : {10, 20, 30}) {
    Int128 sum = 0, fact = 1;
    for (int i = 2; i <= N; ++i) fact *= i;
    for (int K = 0; K <= 3; ++K) sum += perm_count(N, 3, 4, K);
    CHECK(to_string(sum) == to_string(fact));
  }
  CHECK(to_string(Int128(-42)) == "-42");
  try {
    perm_count(40, 5, 5, 1);
    FAIL("expected Overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Overflow);
  }
  CHECK_THROWS_AS(perm_count(5, 3, 2, 1), Error);
}

TEST_CASE("ratio forms") {
  // (N-L)!(N-M)!/((N-L-M+1)!(N-1)!) evaluated directly for N = 9, L = 2, M = 3
  const double direct = 5040.0 * 720.0 / (120.0 * 40320.0);
  CHECK(c_n_ratio(9, 2, 3) == doctest::Approx(direct).epsilon(1e-13));
  double p3 = 0.0;
  for (int K = 2; K <= 3; ++K) p3 += static_cast<double>(perm_count(12, 3, 4, K));
  CHECK(p3_fraction(12, 3, 4) == doctest::Approx(p3 / 39916800.0).epsilon(1e-12));
  CHECK(p3_fraction(200, 3, 4) < p3_fraction(100, 3, 4));
}

TEST_CASE("log-log fit recovers an exact power law") {
  const auto fit = loglog_fit({1, 2, 4, 8}, {3.0, 1.5, 0.75, 0.375});
  REQUIRE(fit.has_value());
  CHECK(fit->slope == doctest::Approx(-1.0));
  CHECK(fit->intercept == doctest::Approx(std::log(3.0)));
  CHECK_FALSE(loglog_fit({1, 2}, {0.0, 1.0}).has_value());
}

TEST_CASE("quantized norms converge to the sup norm") {
  const auto s = norm_convergence_sweep(parse_polynomial(2, "-0.5*x3^2 - 0.5*x1"), {4, 8, 12},
                                        build_su_basis(2, Convention::Pauli), 2048);
  CHECK(s.target.value == doctest::Approx(0.625).epsilon(1e-4));
  const auto& pts = s.norms.points;
  CHECK(std::abs(pts.back().second - s.target.value) < std::abs(pts.front().second - s.target.value));
}

TEST_CASE("limits examples") {
  const auto b = build_su_basis(2, Convention::Pauli);
  const auto f = parse_polynomial(2, "x3^2 + x1*x2"), g = parse_polynomial(2, "x1^2 - x3");
  CHECK(dgr_defect(f, f, 5, b) < 1e-12);
  CHECK(dgr_defect(f, g, 5, b) == doctest::Approx(dgr_defect(g, f, 5, b)).epsilon(1e-12));
  CHECK(dgr_defect(cplx(-3.0) * f, g, 5, b) == doctest::Approx(3.0 * dgr_defect(f, g, 5, b)).epsilon(1e-12));
  for (int N : {50, 100}) CHECK(std::abs(classical_expectation(Polynomial::variable(2, 2), N, 1.0, 0.5)) < 1e-12);
  const auto ising = minimize_classical(1.0, 0.0);
  CHECK(ising.value == doctest::Approx(-0.5));
  const auto strong = minimize_classical(1.0, 2.0);
  CHECK(strong.value == doctest::Approx(-2.0));
  CHECK((strong.minima[0].x - Eigen::Vector3d(1, 0, 0)).norm() < 1e-15);
  for (const auto& m : minimize_classical(1.0, 0.5).minima) CHECK(membership(m, b).member);
  CHECK(equivariance_check(Polynomial::variable(2, 0), 4) == 0.0);
  CHECK(equivariance_check(Polynomial::variable(2, 2), 4) <= 1e-13);
  CHECK(hamiltonian_gap_norm(6, 0.0, 0.7) == 0.0);
  CHECK(static_cast<long>(perm_count(5, 1, 1, 1)) == 24);
  CHECK(static_cast<long>(perm_count(5, 1, 1, 0)) == 96);
  for (int N : {3, 10, 50}) CHECK(c_n_ratio(N, 1, 1) == 1.0);
  double prev = 0.0;
  for (int N = 50; N <= 1600; N *= 2) {
    const double r = c_n_ratio(N, 2, 2);
    CHECK(r > prev);
    CHECK(r <= 1.0);
    prev = r;
  }
  CHECK(p3_fraction(20, 1, 3) == 0.0);
}

TEST_CASE("norms of quantized coordinates") {
  const auto b = build_su_basis(2, Convention::Pauli);
  const auto s = norm_convergence_sweep(Polynomial::variable(2, 2), {2, 5, 9}, b, 512);
  for (const auto& [N, v] : s.norms.points) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  const auto one = norm_convergence_sweep(Polynomial::constant(2, 1.0), {3, 6}, b, 64);
  for (const auto& [N, v] : one.norms.points) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}
