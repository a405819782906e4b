#include <doctest.h>

#include <random>

#include "cwq/polynomial.hpp"
#include "random_poly.hpp"

using namespace cwq;

namespace {

Eigen::VectorXd random_point(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = u(rng);
  return x;
}

}  // namespace

TEST_CASE("parsing and evaluation agree with a hand computation") {
  const auto f = parse_polynomial(2, "2*x1^2*x3 + (0,1)*x2 - 3");
  Eigen::VectorXd x(3);
  x << 0.5, -2.0, 4.0;
  CHECK(std::abs(f.evaluate(x) - cplx(2 * 0.25 * 4 - 3, -2.0)) < 1e-15);
  CHECK(f.degree() == 3);
  CHECK(f.coefficient({0, 1, 0}) == cplx(0, 1));
}

TEST_CASE("format and parse round-trip") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_polynomial(2 + t % 2, 3, rng, 0.2);
    const auto g = parse_polynomial(f.k(), format_polynomial(f));
    CHECK((f - g).is_zero());
  }
  CHECK(format_polynomial(Polynomial(2)) == "0");
}

TEST_CASE("ring operations commute with evaluation") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_polynomial(2, 3, rng), g = random_polynomial(2, 2, rng);
    const auto x = random_point(3, rng);
    CHECK(std::abs((f * g).evaluate(x) - f.evaluate(x) * g.evaluate(x)) < 1e-12);
    CHECK(std::abs((f + g).evaluate(x) - f.evaluate(x) - g.evaluate(x)) < 1e-12);
    CHECK(std::abs(f.conj().evaluate(x) - std::conj(f.evaluate(x))) < 1e-12);
    CHECK(std::abs(f.reflect({1, -1, -1}).evaluate(x) -
                   f.evaluate(Eigen::Vector3d(x[0], -x[1], -x[2]))) < 1e-12);
  }
}

TEST_CASE("derivative matches a central difference") {
  std::mt19937_64 rng(6);
  const auto f = random_polynomial(3, 4, rng, 0.1);
  const auto x = random_point(8, rng);
  const double h = 1e-5;
  for (int j = 0; j < 8; ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const cplx fd = (f.evaluate(xp) - f.evaluate(xm)) / (2 * h);
    CHECK(std::abs(f.derivative(j).evaluate(x) - fd) < 1e-6);
  }
}

TEST_CASE("chi and chi_inverse invert each other") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const auto f = random_polynomial(2, 4, rng);
    const auto z = chi_inverse(f);
    CHECK(z.symmetry_defect() < 1e-15);
    CHECK((chi(z) - f).max_abs_coefficient() < 1e-13);
  }
  // c_2 = [[0,1],[1,0]] on x1, x2 gives 2 x1 x2
  SymbolElement z{2, {{0.0}, {0.0, 0.0, 0.0}, std::vector<cplx>(9, 0.0)}};
  z.levels[2][1] = z.levels[2][3] = 1.0;
  CHECK(chi(z).coefficient({1, 1, 0}) == cplx(2.0));
}

TEST_CASE("malformed input is reported as a parse error") {
  for (const char* text : {"2**x1", "x4", "x1^", "(1,2", "3*y1", ""}) {
    try {
      parse_polynomial(2, text);
      FAIL("accepted " << text);
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::DimensionMismatch));
    }
  }
  CHECK_THROWS_AS(Polynomial(2) + Polynomial(3), Error);
}

TEST_CASE("polynomial examples") {
  const auto x1 = Polynomial::variable(2, 0);
  CHECK(((x1 * x1) - Polynomial::monomial(2, {2, 0, 0})).is_zero());
  Eigen::VectorXd x(3);
  x << 0.5, 0.0, std::sqrt(3.0) / 2;
  CHECK(std::abs(parse_polynomial(2, "x3^2").evaluate(x) - 0.75) < 1e-15);
  CHECK(Polynomial::constant(2, 1.0).evaluate(x) == cplx(1.0));
  SymbolElement one{2, {{1.0}}};
  CHECK((chi(one) - Polynomial::constant(2, 1.0)).is_zero());
  SymbolElement z{2, {{0.0}, {0.0, 0.0, 0.0}, std::vector<cplx>(9, 0.0)}};
  z.levels[2][0 * 3 + 2] = z.levels[2][2 * 3 + 0] = 0.5;
  CHECK((chi(z) - parse_polynomial(2, "x1*x3")).is_zero());
  CHECK_THROWS_AS(x1 * Polynomial::variable(3, 0), Error);
}
