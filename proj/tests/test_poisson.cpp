#include <doctest.h>

#include <random>

#include "cwq/poisson.hpp"
#include "random_poly.hpp"

using namespace cwq;

TEST_CASE("bracket of coordinate functions for Pauli generators") {
  const auto b = build_su_basis(2, Convention::Pauli);
  const auto x1 = Polynomial::variable(2, 0), x2 = Polynomial::variable(2, 1), x3 = Polynomial::variable(2, 2);
  CHECK((poisson_bracket(x1, x2, b) + 2.0 * x3).is_zero());
  CHECK((poisson_bracket(x2, x3, b) + 2.0 * x1).is_zero());
  CHECK((poisson_bracket(x1, x2, b, +1) - 2.0 * x3).is_zero());
  CHECK((poisson_bracket(x3 * x3, x1, b) + 4.0 * x3 * x2).is_zero());
}

TEST_CASE("bracket is antisymmetric, Leibniz and Jacobi") {
  std::mt19937_64 rng(9);
  for (int k : {2, 3}) {
    const auto b = build_su_basis(k, Convention::Orthonormal);
    for (int t = 0; t < 4; ++t) {
      const auto f = random_polynomial(k, 2, rng, 0.15), g = random_polynomial(k, 2, rng, 0.15),
                 h = random_polynomial(k, 2, rng, 0.15);
      CHECK((poisson_bracket(f, g, b) + poisson_bracket(g, f, b)).max_abs_coefficient() < 1e-12);
      CHECK((poisson_bracket(f, g * h, b) - poisson_bracket(f, g, b) * h - g * poisson_bracket(f, h, b))
                .max_abs_coefficient() < 1e-11);
      const auto jac = poisson_bracket(f, poisson_bracket(g, h, b), b) +
                       poisson_bracket(g, poisson_bracket(h, f, b), b) +
                       poisson_bracket(h, poisson_bracket(f, g, b), b);
      CHECK(jac.max_abs_coefficient() < 1e-10);
    }
  }
}

TEST_CASE("sum of squares is a Casimir") {
  std::mt19937_64 rng(10);
  for (int k : {2, 3}) {
    const auto b = build_su_basis(k, Convention::Orthonormal);
    Polynomial c(k);
    for (int j = 0; j < k * k - 1; ++j) c += Polynomial::variable(k, j) * Polynomial::variable(k, j);
    const auto g = random_polynomial(k, 3, rng, 0.1);
    CHECK(poisson_bracket(c, g, b).max_abs_coefficient() < 1e-12);
  }
}

TEST_CASE("sup-norm estimate approaches known maxima from below") {
  const auto pauli = build_su_basis(2, Convention::Pauli);
  const auto x1 = Polynomial::variable(2, 0);
  const auto e = sup_norm_estimate(x1, pauli, 2000);
  CHECK(e.value <= 1.0 + 1e-10);
  CHECK(e.value >= 1.0 - 1e-6);
  CHECK(e.accepted > 0);
  const auto ortho = build_su_basis(2, Convention::Orthonormal);
  CHECK(sup_norm_estimate(x1, ortho, 2000).value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  // -(1/2) x3^2 - x1/2 over the unit ball: maximum of |.| is 5/8 at x1 = 1/2
  const auto h = parse_polynomial(2, "-0.5*x3^2 - 0.5*x1");
  CHECK(sup_norm_estimate(h, pauli, 4000).value == doctest::Approx(0.625).epsilon(1e-5));
}

TEST_CASE("bracket examples") {
  const auto b = build_su_basis(2, Convention::Pauli);
  const auto x1 = Polynomial::variable(2, 0), x2 = Polynomial::variable(2, 1), x3 = Polynomial::variable(2, 2);
  CHECK((poisson_bracket(x3, x1, b) + 2.0 * x2).is_zero());
  std::mt19937_64 rng(15);
  const auto f = random_polynomial(2, 3, rng);
  CHECK(poisson_bracket(f, f, b).max_abs_coefficient() < 1e-12);
  CHECK(sup_norm_estimate(x3, b, 1000).value == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(sup_norm_estimate(Polynomial::constant(2, 1.0), b, 100).value == 1.0);
}
