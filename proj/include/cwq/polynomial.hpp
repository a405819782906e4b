#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cwq/errors.hpp"
#include "cwq/kernels.hpp"
#include "cwq/statespace.hpp"

namespace cwq {

/// Exponent vector of a monomial in x_1..x_{k^2-1}.
using Exponents = std::vector<int>;

/// Sparse complex polynomial on R^{k^2-1}. Coefficients with magnitude below
/// 1e-15 are never stored.
class Polynomial {
 public:
  static constexpr double kPruneThreshold = 1e-15;

  explicit Polynomial(int k = 2);

  static Polynomial constant(int k, cplx value);
  /// x_{j+1} (0-based variable index).
  static Polynomial variable(int k, int j);
  static Polynomial monomial(int k, Exponents exponents, cplx coefficient = 1.0);

  int k() const { return k_; }
  int variables() const { return k_ * k_ - 1; }
  const std::map<Exponents, cplx>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  cplx coefficient(const Exponents& e) const;
  double max_abs_coefficient() const;

  void add_term(const Exponents& e, cplx coefficient);

  Polynomial derivative(int j) const;
  Polynomial conj() const;
  /// f(s_1 x_1, ..., s_n x_n) for signs s_j = +-1.
  Polynomial reflect(const std::vector<int>& signs) const;

  cplx evaluate(const Eigen::VectorXd& x) const;
  cplx evaluate(const StateCoordinates& coords) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(cplx scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void require_same_k(const Polynomial& other) const;

  int k_;
  std::map<Exponents, cplx> terms_;
};

Polynomial add(const Polynomial& f, const Polynomial& g);
Polynomial multiply(const Polynomial& f, const Polynomial& g);
cplx evaluate(const Polynomial& f, const StateCoordinates& x);

int total_degree(const Exponents& e);

/// Parses "coeff*x1^a*x2^b + ..." (1-based variables). Coefficients are real
/// numbers or "(re,im)" pairs.
Polynomial parse_polynomial(int k, std::string_view text);
/// Inverse of parse_polynomial, terms ordered by degree then exponents.
std::string format_polynomial(const Polynomial& f);

/// Symbol element c_0 I + c_1^{j} b_j + c_2^{j1 j2} b_j1 (x)_s b_j2 + ...
/// Level L stores the fully symmetric array c_L as n^L entries, row-major
/// over the index tuple (j1, ..., jL).
struct SymbolElement {
  int k = 2;
  std::vector<std::vector<cplx>> levels;

  int variables() const { return k * k - 1; }
  int max_level() const { return static_cast<int>(levels.size()) - 1; }
  /// Largest deviation of any level from its own index permutations.
  double symmetry_defect() const;
};

/// Degree-L homogeneous polynomial sum c_L^{j1..jL} x_j1 ... x_jL per level.
Polynomial chi(const SymbolElement& z);
/// Symmetrizes monomial coefficients back into levels.
SymbolElement chi_inverse(const Polynomial& f);

}  // namespace cwq
