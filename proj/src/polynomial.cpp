#include "cwq/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace cwq {

Polynomial::Polynomial(int k) : k_(k) {
  if (k < 2) throw Error(ErrorKind::InvalidDimension, "polynomials need k >= 2");
}

Polynomial Polynomial::constant(int k, cplx value) {
  Polynomial p(k);
  p.add_term(Exponents(p.variables(), 0), value);
  return p;
}

Polynomial Polynomial::variable(int k, int j) {
  Polynomial p(k);
  if (j < 0 || j >= p.variables())
    throw Error(ErrorKind::DimensionMismatch, "variable index out of range");
  Exponents e(p.variables(), 0);
  e[j] = 1;
  p.add_term(e, 1.0);
  return p;
}

Polynomial Polynomial::monomial(int k, Exponents exponents, cplx coefficient) {
  Polynomial p(k);
  p.add_term(exponents, coefficient);
  return p;
}

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

cplx Polynomial::coefficient(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? cplx{} : it->second;
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void Polynomial::add_term(const Exponents& e, cplx coefficient) {
  if (static_cast<int>(e.size()) != variables())
    throw Error(ErrorKind::DimensionMismatch, "exponent vector has the wrong length");
  if (std::any_of(e.begin(), e.end(), [](int v) { return v < 0; }))
    throw Error(ErrorKind::DimensionMismatch, "negative exponent");
  auto [it, inserted] = terms_.try_emplace(e, coefficient);
  if (!inserted) it->second += coefficient;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

Polynomial Polynomial::derivative(int j) const {
  Polynomial out(k_);
  for (const auto& [e, c] : terms_) {
    if (e[j] == 0) continue;
    Exponents d = e;
    d[j] -= 1;
    out.add_term(d, c * static_cast<double>(e[j]));
  }
  return out;
}

Polynomial Polynomial::conj() const {
  Polynomial out(k_);
  for (const auto& [e, c] : terms_) out.add_term(e, std::conj(c));
  return out;
}

Polynomial Polynomial::reflect(const std::vector<int>& signs) const {
  Polynomial out(k_);
  for (const auto& [e, c] : terms_) {
    int parity = 0;
    for (int j = 0; j < variables(); ++j)
      if (signs[j] < 0) parity += e[j];
    out.add_term(e, parity % 2 == 0 ? c : -c);
  }
  return out;
}

cplx Polynomial::evaluate(const Eigen::VectorXd& x) const {
  if (x.size() != variables()) throw Error(ErrorKind::DimensionMismatch, "point has the wrong length");
  cplx acc{};
  for (const auto& [e, c] : terms_) {
    double m = 1.0;
    for (int j = 0; j < variables(); ++j)
      for (int p = 0; p < e[j]; ++p) m *= x[j];
    acc += c * m;
  }
  return acc;
}

cplx Polynomial::evaluate(const StateCoordinates& coords) const {
  if (coords.k != k_) throw Error(ErrorKind::DimensionMismatch, "coordinates and polynomial disagree on k");
  return evaluate(coords.x);
}

void Polynomial::require_same_k(const Polynomial& other) const {
  if (other.k_ != k_) throw Error(ErrorKind::DimensionMismatch, "polynomials over different k");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_k(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_k(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(cplx scalar) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scalar;
    if (std::abs(it->second) < kPruneThreshold)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_k(b);
  Polynomial out(a.k());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      Exponents e(ea.size());
      for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial add(const Polynomial& f, const Polynomial& g) { return f + g; }
Polynomial multiply(const Polynomial& f, const Polynomial& g) { return f * g; }
cplx evaluate(const Polynomial& f, const StateCoordinates& x) { return f.evaluate(x); }

// ---------------------------------------------------------------- text form

namespace {

class Parser {
 public:
  Parser(int k, std::string_view text) : k_(k), text_(text) {}

  Polynomial parse() {
    Polynomial out(k_);
    skip_ws();
    if (pos_ == text_.size()) fail("empty expression");
    bool first = true;
    while (pos_ < text_.size()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = take() == '-' ? -1.0 : 1.0;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [e, c] = term();
      out.add_term(e, sign * c);
      skip_ws();
    }
    return out;
  }

 private:
  std::pair<Exponents, cplx> term() {
    Exponents e(k_ * k_ - 1, 0);
    cplx coeff = 1.0;
    bool any = false;
    while (true) {
      skip_ws();
      if (peek() == 'x') {
        take();
        const int j = integer();
        if (j < 1 || j > k_ * k_ - 1) fail("variable x" + std::to_string(j) + " out of range");
        int power = 1;
        skip_ws();
        if (peek() == '^') {
          take();
          skip_ws();
          power = integer();
        }
        e[j - 1] += power;
      } else if (peek() == '(') {
        coeff *= complex_literal();
      } else {
        coeff *= real_literal();
      }
      any = true;
      skip_ws();
      if (peek() != '*') break;
      take();
    }
    if (!any) fail("empty term");
    return {e, coeff};
  }

  cplx complex_literal() {
    take();  // (
    skip_ws();
    const double re = real_literal();
    skip_ws();
    if (take() != ',') fail("expected ',' in complex literal");
    skip_ws();
    double sign = 1.0;
    if (peek() == '-' || peek() == '+') sign = take() == '-' ? -1.0 : 1.0;
    const double im = sign * real_literal();
    skip_ws();
    if (take() != ')') fail("expected ')'");
    return {re, im};
  }

  double real_literal() {
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  int integer() {
    int value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char take() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError,
                "cannot parse polynomial at offset " + std::to_string(pos_) + ": " + why);
  }

  int k_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_coefficient(cplx c) {
  if (c.imag() == 0.0) return fmt::format("{}", c.real());
  return fmt::format("({},{})", c.real(), c.imag());
}

}  // namespace

Polynomial parse_polynomial(int k, std::string_view text) { return Parser(k, text).parse(); }

std::string format_polynomial(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::vector<std::pair<Exponents, cplx>> terms(f.terms().begin(), f.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = total_degree(a.first), db = total_degree(b.first);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::string out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto& [e, c] = terms[t];
    cplx coeff = c;
    if (t > 0) {
      if (coeff.imag() == 0.0 && coeff.real() < 0) {
        out += " - ";
        coeff = -coeff;
      } else {
        out += " + ";
      }
    }
    std::string body = format_coefficient(coeff);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      body += fmt::format("*x{}", j + 1);
      if (e[j] > 1) body += fmt::format("^{}", e[j]);
    }
    out += body;
  }
  return out;
}

// ---------------------------------------------------------------- chi

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Index tuple of a flat row-major position at level L.
std::vector<int> unflatten(std::size_t flat, int n, int L) {
  std::vector<int> idx(L);
  for (int p = L - 1; p >= 0; --p) {
    idx[p] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

double multinomial(const Exponents& e) {
  double r = std::tgamma(total_degree(e) + 1.0);
  for (int v : e) r /= std::tgamma(v + 1.0);
  return r;
}

}  // namespace

double SymbolElement::symmetry_defect() const {
  const int n = variables();
  double worst = 0.0;
  for (int L = 0; L <= max_level(); ++L) {
    for (std::size_t flat = 0; flat < levels[L].size(); ++flat) {
      auto idx = unflatten(flat, n, L);
      std::sort(idx.begin(), idx.end());
      std::size_t sorted = 0;
      for (int v : idx) sorted = sorted * n + v;
      worst = std::max(worst, std::abs(levels[L][flat] - levels[L][sorted]));
    }
  }
  return worst;
}

Polynomial chi(const SymbolElement& z) {
  const int n = z.variables();
  Polynomial out(z.k);
  for (int L = 0; L <= z.max_level(); ++L) {
    if (z.levels[L].size() != ipow(n, L))
      throw Error(ErrorKind::DimensionMismatch, "symbol level has the wrong size");
    for (std::size_t flat = 0; flat < z.levels[L].size(); ++flat) {
      if (z.levels[L][flat] == cplx{}) continue;
      Exponents e(n, 0);
      for (int j : unflatten(flat, n, L)) ++e[j];
      out.add_term(e, z.levels[L][flat]);
    }
  }
  return out;
}

SymbolElement chi_inverse(const Polynomial& f) {
  const int n = f.variables();
  SymbolElement z;
  z.k = f.k();
  const int top = f.degree();
  z.levels.resize(top + 1);
  for (int L = 0; L <= top; ++L) z.levels[L].assign(ipow(n, L), cplx{});
  for (int L = 0; L <= top; ++L) {
    for (std::size_t flat = 0; flat < z.levels[L].size(); ++flat) {
      Exponents e(n, 0);
      for (int j : unflatten(flat, n, L)) ++e[j];
      const cplx c = f.coefficient(e);
      if (c != cplx{}) z.levels[L][flat] = c / multinomial(e);
    }
  }
  return z;
}

}  // namespace cwq
