#pragma once

#include <cstdint>

#include "cwq/liealg.hpp"
#include "cwq/polynomial.hpp"

namespace cwq {

/// Sign s in {f,g} = s * sum C_ab^c x_c d_a f d_b g. -1 is the default.
inline constexpr int kDefaultBracketSign = -1;

/// Lie-Poisson bracket of polynomials, term by term on formal derivatives.
Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g, const SuBasis& basis,
                           int sign = kDefaultBracketSign);

struct SupNormEstimate {
  double value = 0.0;  ///< lower bound on sup |f| over Q_k
  Eigen::VectorXd argmax;
  int samples = 0;     ///< points drawn
  int accepted = 0;    ///< points inside Q_k
};

/// Sampled lower bound for sup_{x in Q_k} |f(x)|. Halton points in [-1,1]^n are
/// rejected by membership(); the best 10 are refined by a shrinking-step hill
/// climb, with every candidate also pushed along its ray onto the boundary.
SupNormEstimate sup_norm_estimate(const Polynomial& f, const SuBasis& basis, int samples,
                                  std::uint64_t seed = 20240521);

}  // namespace cwq
