#include "cwq/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cwq/statespace.hpp"

namespace cwq {

Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g, const SuBasis& basis,
                           int sign) {
  if (f.k() != basis.k || g.k() != basis.k)
    throw Error(ErrorKind::DimensionMismatch, "bracket operands and basis disagree on k");
  const int n = basis.dimension();
  std::vector<Polynomial> df, dg;
  df.reserve(n);
  dg.reserve(n);
  for (int a = 0; a < n; ++a) {
    df.push_back(f.derivative(a));
    dg.push_back(g.derivative(a));
  }
  Polynomial out(basis.k);
  for (int a = 0; a < n; ++a) {
    if (df[a].is_zero()) continue;
    for (int b = 0; b < n; ++b) {
      if (dg[b].is_zero()) continue;
      Polynomial lin(basis.k);
      for (int c = 0; c < n; ++c) {
        const double C = basis.structure(a, b, c);
        if (C != 0.0) lin += Polynomial::variable(basis.k, c) * cplx(sign * C);
      }
      if (lin.is_zero()) continue;
      out += lin * df[a] * dg[b];
    }
  }
  return out;
}

namespace {

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                           59, 61, 67, 71, 73, 79, 83, 89};

bool inside(const Eigen::VectorXd& x, const SuBasis& basis) {
  return membership(StateCoordinates(basis.k, x), basis).member;
}

// Largest t in [1, tmax] with t*x still a member, by bisection.
Eigen::VectorXd push_to_boundary(const Eigen::VectorXd& x, const SuBasis& basis) {
  const double r = x.norm();
  if (r == 0.0) return x;
  double lo = 1.0, hi = 2.0 / r;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (inside(mid * x, basis))
      lo = mid;
    else
      hi = mid;
  }
  return lo * x;
}

}  // namespace

SupNormEstimate sup_norm_estimate(const Polynomial& f, const SuBasis& basis, int samples,
                                  std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::DimensionMismatch, "sup_norm_estimate needs samples >= 1");
  const int n = basis.dimension();
  if (n > static_cast<int>(std::size(kPrimes)))
    throw Error(ErrorKind::InvalidDimension, "sup_norm_estimate supports k <= 5");

  auto score = [&](const Eigen::VectorXd& x) { return std::abs(f.evaluate(x)); };

  SupNormEstimate out;
  out.samples = samples;
  std::vector<std::pair<double, Eigen::VectorXd>> best;
  auto offer = [&](const Eigen::VectorXd& x) {
    best.emplace_back(score(x), x);
    std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    if (best.size() > 10) best.pop_back();
  };

  offer(Eigen::VectorXd::Zero(n));
  Eigen::VectorXd x(n);
  for (int i = 0; i < samples; ++i) {
    for (int j = 0; j < n; ++j) x[j] = 2.0 * radical_inverse(static_cast<std::uint64_t>(i) + 1, kPrimes[j]) - 1.0;
    if (!inside(x, basis)) continue;
    ++out.accepted;
    offer(x);
    offer(push_to_boundary(x, basis));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double top = 0.0;
  Eigen::VectorXd arg = best.front().second;
  for (auto [value, p] : best) {
    double step = 0.1;
    for (int it = 0; it < 400 && step > 1e-9; ++it) {
      Eigen::VectorXd d(n);
      for (int j = 0; j < n; ++j) d[j] = gauss(rng);
      bool moved = false;
      for (const Eigen::VectorXd& cand : {Eigen::VectorXd(p + step * d.normalized()),
                                          Eigen::VectorXd(p - step * d.normalized())}) {
        Eigen::VectorXd q = cand;
        if (!inside(cand, basis)) {
          // pull the candidate back along its own ray
          double lo = 0.0, hi = 1.0;
          for (int b = 0; b < 60; ++b) {
            const double mid = 0.5 * (lo + hi);
            if (inside(mid * cand, basis))
              lo = mid;
            else
              hi = mid;
          }
          q = lo * cand;
        }
        const double s = score(q);
        if (s > value) {
          value = s;
          p = q;
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.7;
    }
    if (value > top) {
      top = value;
      arg = p;
    }
  }
  out.value = top;
  out.argmax = arg;
  return out;
}

}  // namespace cwq
