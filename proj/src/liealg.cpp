#include "cwq/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cwq {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidConvention: return "invalid-convention";
    case ErrorKind::InconsistentBasis: return "inconsistent-basis";
    case ErrorKind::NotAState: return "not-a-state";
    case ErrorKind::DimensionMismatch: return "dimension-error";
    case ErrorKind::SizeLimit: return "size-error";
    case ErrorKind::OrderError: return "order-error";
    case ErrorKind::ShapeError: return "shape-error";
    case ErrorKind::PurificationFailure: return "purification-failure";
    case ErrorKind::ScanError: return "scan-error";
    case ErrorKind::Overflow: return "use-ratio-form";
    case ErrorKind::ParseError: return "parse-error";
  }
  return "unknown";
}

std::string_view to_string(Convention c) {
  return c == Convention::Pauli ? "pauli" : "orthonormal";
}

Convention parse_convention(std::string_view text) {
  if (text == "pauli") return Convention::Pauli;
  if (text == "orthonormal") return Convention::Orthonormal;
  throw Error(ErrorKind::InvalidConvention, "unknown convention '" + std::string(text) + "'");
}

double StructureConstants::squared_norm() const {
  double acc = 0.0;
  for (double v : data_) acc += v * v;
  return acc;
}

double SuBasis::gram(int j) const {
  return generators[j].cwiseAbs2().sum();
}

SuBasis build_su_basis(int k, Convention convention) {
  if (k < 2) throw Error(ErrorKind::InvalidDimension, "su(k) basis needs k >= 2");
  if (convention == Convention::Pauli && k != 2)
    throw Error(ErrorKind::InvalidConvention, "the Pauli convention exists only for k = 2");

  const cplx I(0.0, 1.0);
  std::vector<SquareMatrix> gens;
  gens.reserve(k * k - 1);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      SquareMatrix m = SquareMatrix::Zero(k, k);
      m(i, j) = m(j, i) = 1.0;
      gens.push_back(m);
    }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      SquareMatrix m = SquareMatrix::Zero(k, k);
      m(i, j) = -I;
      m(j, i) = I;
      gens.push_back(m);
    }
  for (int l = 1; l < k; ++l) {
    SquareMatrix m = SquareMatrix::Zero(k, k);
    for (int j = 0; j < l; ++j) m(j, j) = 1.0;
    m(l, l) = -static_cast<double>(l);
    gens.push_back(m);
  }

  // Rescale each matrix separately so tr(b^2) hits the convention's target.
  const double target = convention == Convention::Pauli ? 2.0 : 1.0;
  for (auto& m : gens) m *= std::sqrt(target / m.cwiseAbs2().sum());

  SuBasis basis;
  basis.k = k;
  basis.convention = convention;
  basis.generators = std::move(gens);
  basis.structure = structure_constants(basis.generators);
  return basis;
}

StructureConstants structure_constants(const std::vector<SquareMatrix>& generators) {
  const int n = static_cast<int>(generators.size());
  StructureConstants c(n);
  const cplx I(0.0, 1.0);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      const SquareMatrix comm = generators[r] * generators[s] - generators[s] * generators[r];
      for (int l = 0; l < n; ++l) {
        const cplx norm = (generators[l] * generators[l]).trace();
        const cplx value = -I * (comm * generators[l]).trace() / norm;
        if (std::abs(value.imag()) > 1e-10)
          throw Error(ErrorKind::InconsistentBasis,
                      "structure constant has imaginary residue " + std::to_string(value.imag()));
        c(r, s, l) = value.real();
      }
    }
  return c;
}

double commutator_residual(const SuBasis& basis) {
  const int n = basis.dimension();
  const cplx I(0.0, 1.0);
  double worst = 0.0;
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      const auto& a = basis.generators[r];
      const auto& b = basis.generators[s];
      SquareMatrix rhs = SquareMatrix::Zero(basis.k, basis.k);
      for (int l = 0; l < n; ++l) rhs += I * basis.structure(r, s, l) * basis.generators[l];
      worst = std::max(worst, (a * b - b * a - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

double jacobi_residual(const StructureConstants& c) {
  const int n = c.size();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m)
            acc += c(a, b, m) * c(m, cc, d) + c(b, cc, m) * c(m, a, d) + c(cc, a, m) * c(m, b, d);
          worst = std::max(worst, std::abs(acc));
        }
  return worst;
}

}  // namespace cwq
