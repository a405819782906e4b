#include <doctest.h>

#include <random>

#include "cwq/tensor.hpp"
#include "oracles.hpp"
#include "random_poly.hpp"

using namespace cwq;
using oracle::Mat;

namespace {

Mat dense(const TensorOperator& a) { return a.dense(); }

Mat cw_oracle(int N, double J, double B) {
  const Mat s3 = oracle::site_sum(oracle::sigma(3), N);
  return -J / (2.0 * N * N) * s3 * s3 - B / N * oracle::site_sum(oracle::sigma(1), N);
}

}  // namespace

TEST_CASE("embed places a factor on one site") {
  const Mat I = Mat::Identity(2, 2);
  CHECK(oracle::max_abs(dense(embed(oracle::sigma(1), 2, 3)) - oracle::kron_all({I, oracle::sigma(1), I})) == 0.0);
  CHECK_THROWS_AS(embed(oracle::sigma(1), 4, 3), Error);
}

TEST_CASE("symmetrize equals the average over all orderings") {
  std::mt19937_64 rng(1);
  for (int N = 1; N <= 5; ++N) {
    std::vector<SquareMatrix> ops;
    for (int s = 0; s < N; ++s) ops.push_back(s % 2 ? SquareMatrix(Mat::Identity(2, 2)) : oracle::random_matrix(2, rng));
    CHECK(oracle::max_abs(dense(symmetrize(ops)) - oracle::symmetrize(ops)) < 1e-13);
  }
  std::vector<SquareMatrix> three = {oracle::random_matrix(3, rng), oracle::random_matrix(3, rng), Mat::Identity(3, 3)};
  CHECK(oracle::max_abs(dense(symmetrize(three)) - oracle::symmetrize(three)) < 1e-13);
}

TEST_CASE("quantization of low-degree monomials") {
  const auto b = build_su_basis(2, Convention::Pauli);
  const int N = 4;
  const Mat I = Mat::Identity(2, 2);
  CHECK(oracle::max_abs(dense(quantize(Polynomial::variable(2, 2), N, b)) -
                        oracle::site_sum(oracle::sigma(3), N) / N) < 1e-14);
  CHECK(oracle::max_abs(dense(quantize(parse_polynomial(2, "x1*x3"), N, b)) -
                        oracle::symmetrize({oracle::sigma(1), oracle::sigma(3), I, I})) < 1e-14);
  CHECK(quantize(parse_polynomial(2, "x1^2*x2*x3^2"), N, b).matrix.nonZeros() == 0);
  CHECK(oracle::max_abs(dense(quantize(Polynomial::constant(2, 3.0), N, b)) - 3.0 * Mat::Identity(16, 16)) == 0.0);
}

TEST_CASE("quantization is a unital *-map and product states recover the symbol") {
  std::mt19937_64 rng(3);
  for (int k : {2, 3}) {
    const auto b = build_su_basis(k, Convention::Orthonormal);
    const int N = k == 2 ? 5 : 3;
    Quantizer q(b, N);
    for (int t = 0; t < 4; ++t) {
      const auto f = random_polynomial(k, 3, rng, k == 2 ? 0.4 : 0.08);
      const auto Qf = q(f);
      CHECK(oracle::max_abs(dense(q(f.conj())) - dense(Qf).adjoint()) < 1e-13);
      // tr(rho^{(x)N} Q(f)) = f(x) for deg f <= N
      Mat a = oracle::random_matrix(k, rng);
      Mat rho = a * a.adjoint();
      rho /= rho.trace().real();
      const auto x = f_k_inverse(DensityMatrix{k, rho}, b);
      const cplx got = product_state_functional(x, b, Qf);
      CHECK(std::abs(got - f.evaluate(x)) < 1e-11);
      std::vector<Mat> rhos(N, rho);
      CHECK(std::abs(got - (oracle::kron_all(rhos) * dense(Qf)).trace()) < 1e-11);
    }
  }
}

TEST_CASE("inject averages b (x) I over site permutations") {
  std::mt19937_64 rng(4);
  const int N = 4;
  const Mat bmat = oracle::random_matrix(4, rng);
  TensorOperator b{2, 2, bmat.sparseView()};
  const Mat padded = oracle::kron_all({bmat, Mat::Identity(4, 4)});
  std::vector<int> perm = {0, 1, 2, 3};
  Mat ref = Mat::Zero(16, 16);
  int count = 0;
  do {
    const Mat P = oracle::site_permutation(2, perm);
    ref += P * padded * P.adjoint();
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  ref /= count;
  CHECK(oracle::max_abs(dense(inject(b, N)) - ref) < 1e-13);
  CHECK_THROWS_AS(inject(b, 1), Error);
}

TEST_CASE("permute_sites and flip_all match explicit unitaries") {
  std::mt19937_64 rng(5);
  std::vector<SquareMatrix> ops = {oracle::random_matrix(2, rng), oracle::random_matrix(2, rng),
                                   oracle::random_matrix(2, rng)};
  Mat a = oracle::kron_all(ops);
  TensorOperator A{2, 3, a.sparseView()};
  const std::vector<int> perm = {2, 0, 1};
  const Mat P = oracle::site_permutation(2, perm);
  CHECK(oracle::max_abs(dense(permute_sites(A, perm)) - P * a * P.adjoint()) < 1e-14);
  const Mat X = oracle::kron_all({oracle::sigma(1), oracle::sigma(1), oracle::sigma(1)});
  CHECK(oracle::max_abs(dense(flip_all(A)) - X * a * X) < 1e-14);
}

TEST_CASE("commutators and the commutator lemma") {
  const auto c = commutator(embed(oracle::sigma(1), 1, 2), embed(oracle::sigma(2), 1, 2));
  CHECK(oracle::max_abs(dense(c) - cplx(0, 2) * dense(embed(oracle::sigma(3), 1, 2))) < 1e-15);
  CHECK_THROWS_AS(commutator(identity_operator(2, 2), identity_operator(2, 3)), Error);
  std::mt19937_64 rng(6);
  for (int N = 2; N <= 4; ++N) {
    std::vector<SquareMatrix> a, ap;
    for (int s = 0; s < N; ++s) {
      a.push_back(oracle::random_matrix(2, rng));
      ap.push_back(oracle::random_matrix(2, rng));
    }
    CHECK(commutator_lemma_check(a, ap) < 1e-11);
  }
}

TEST_CASE("operator norm agrees with a dense eigensolve on both sides of the Lanczos switch") {
  std::mt19937_64 rng(7);
  const auto b = build_su_basis(2, Convention::Pauli);
  auto top_singular = [](const Mat& a) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
    return std::sqrt(es.eigenvalues().maxCoeff());
  };
  for (int N : {6, 9}) {
    const auto f = random_polynomial(2, 3, rng);
    const auto Qf = quantize(f, N, b);
    CHECK(operator_norm(Qf) == doctest::Approx(top_singular(dense(Qf))).epsilon(1e-10));
    const auto h = quantize(f + f.conj(), N, b);
    CHECK(operator_norm(h) == doctest::Approx(top_singular(dense(h))).epsilon(1e-10));
  }
}

TEST_CASE("Curie-Weiss Hamiltonian on the tensor space and its symmetric compression") {
  for (int N = 2; N <= 7; ++N) {
    const auto H = curie_weiss_tensor_hamiltonian(N, 1.0, 0.5);
    CHECK(oracle::max_abs(dense(H) - cw_oracle(N, 1.0, 0.5)) < 1e-14);
    const auto Hs = quantize(parse_polynomial(2, "-0.5*x3^2 - 0.5*x1"), N, build_su_basis(2, Convention::Pauli));
    // Q(x3^2) drops the diagonal i = j terms of (sum sigma_3)^2 / N^2
    const Mat s3 = oracle::site_sum(oracle::sigma(3), N);
    const Mat q33 = (s3 * s3 - N * Mat::Identity(1L << N, 1L << N)) / (N * (N - 1.0));
    CHECK(oracle::max_abs(dense(Hs) - (-0.5 * q33 - 0.5 / N * oracle::site_sum(oracle::sigma(1), N))) < 1e-14);
    Mat D(1L << N, N + 1);
    for (int up = 0; up <= N; ++up) D.col(up) = oracle::dicke(N, up);
    CHECK(oracle::max_abs(compress_to_symmetric(H) - D.adjoint() * dense(H) * D) < 1e-13);
  }
}

TEST_CASE("Dicke vectors embed as normalized symmetric tensors") {
  Eigen::VectorXcd c(5);
  c << 0.1, 0.2, 0.3, 0.4, 0.5;
  c.normalize();
  const auto v = dicke_to_tensor(c);
  CHECK(v.norm() == doctest::Approx(1.0));
  Eigen::VectorXcd ref = Eigen::VectorXcd::Zero(16);
  for (int up = 0; up <= 4; ++up) ref += c[up] * oracle::dicke(4, up);
  CHECK((v - ref).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("size limits") {
  CHECK(tensor_dimension(2, 14) == 16384);
  try {
    tensor_dimension(2, 15);
    FAIL("expected SizeLimit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeLimit);
  }
  CHECK_THROWS_AS(commutator_lemma_check(std::vector<SquareMatrix>(7, Mat::Identity(2, 2)),
                                         std::vector<SquareMatrix>(7, Mat::Identity(2, 2))),
                  Error);
}

TEST_CASE("tensor examples") {
  const Mat I = Mat::Identity(2, 2);
  const auto pauli = build_su_basis(2, Convention::Pauli);
  CHECK(oracle::max_abs(dense(embed(oracle::sigma(3), 1, 2)) - oracle::kron(oracle::sigma(3), I)) == 0.0);
  CHECK(oracle::max_abs(dense(embed(I, 2, 3)) - Mat::Identity(8, 8)) == 0.0);
  CHECK(oracle::max_abs(dense(symmetrize({oracle::sigma(1), oracle::sigma(3)})) -
                        0.5 * (oracle::kron(oracle::sigma(1), oracle::sigma(3)) +
                               oracle::kron(oracle::sigma(3), oracle::sigma(1)))) < 1e-15);
  const int N = 4;
  const Mat s3 = oracle::site_sum(oracle::sigma(3), N);
  CHECK(oracle::max_abs(dense(inject(TensorOperator{2, 1, Mat(oracle::sigma(3)).sparseView()}, N)) - s3 / N) < 1e-15);
  const Mat ss = oracle::kron(oracle::sigma(3), oracle::sigma(3));
  const Mat pairs = (s3 * s3 - N * Mat::Identity(16, 16)) / (N * (N - 1.0));
  CHECK(oracle::max_abs(dense(inject(TensorOperator{2, 2, ss.sparseView()}, N)) - pairs) < 1e-14);
  CHECK(oracle::max_abs(dense(inject(identity_operator(2, 2), N)) - Mat::Identity(16, 16)) < 1e-15);
  CHECK(oracle::max_abs(dense(quantize(Polynomial::constant(2, 1.0), 3, pauli)) - Mat::Identity(8, 8)) == 0.0);
  CHECK(quantize(parse_polynomial(2, "x1*x2*x3"), 2, pauli).matrix.nonZeros() == 0);
  CHECK(oracle::max_abs(dense(quantize(Polynomial::variable(2, 2), 3, pauli)) -
                        oracle::site_sum(oracle::sigma(3), 3) / 3.0) < 1e-15);
  CHECK(operator_norm(quantize(Polynomial::variable(2, 2), 4, pauli)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("commutator lemma examples and product-state functional identities") {
  const Mat I = Mat::Identity(2, 2);
  CHECK(commutator_lemma_check({oracle::sigma(1), I}, {oracle::sigma(3), I}) <= 1e-13);
  CHECK(commutator_lemma_check({oracle::sigma(2), oracle::sigma(1)}, {oracle::sigma(2), oracle::sigma(1)}) <= 1e-13);
  const auto pauli = build_su_basis(2, Convention::Pauli);
  const StateCoordinates w(2, Eigen::Vector3d(0.3, -0.2, 0.6));
  for (int N = 2; N <= 6; ++N) {
    CHECK(std::abs(product_state_functional(w, pauli, identity_operator(2, N)) - 1.0) < 1e-15);
    CHECK(std::abs(product_state_functional(w, pauli, quantize(Polynomial::variable(2, 2), N, pauli)) - 0.6) < 1e-14);
    CHECK(std::abs(product_state_functional(w, pauli, quantize(parse_polynomial(2, "x3^2"), N, pauli)) - 0.36) < 1e-14);
  }
  CHECK_THROWS_AS(product_state_functional(StateCoordinates(2, Eigen::Vector3d(1, 1, 0)), pauli, identity_operator(2, 2)),
                  Error);
}
