#include "cwq/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <omp.h>

namespace cwq::kernels {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <class T>
T pairwise_tree(std::vector<T> partials) {
  if (partials.empty()) return T{};
  while (partials.size() > 1) {
    std::vector<T> next((partials.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const std::size_t a = 2 * i;
      next[i] = a + 1 < partials.size() ? partials[a] + partials[a + 1] : partials[a];
    }
    partials = std::move(next);
  }
  return partials.front();
}

std::size_t block_count(std::size_t n) {
  return (n + kReductionBlock - 1) / kReductionBlock;
}

template <class T>
T blocked_sum(std::span<const T> values) {
  const std::size_t nb = block_count(values.size());
  std::vector<T> partials(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(values.size(), lo + kReductionBlock);
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += values[i];
    partials[b] = acc;
  }
  return pairwise_tree(std::move(partials));
}

// Nonzeros of each factor row: nz[f][a] = {(c, F(a, c))}.
using FactorRows = std::vector<std::vector<std::vector<std::pair<int, cplx>>>>;

FactorRows factor_rows(const WordPlan& plan) {
  FactorRows nz(plan.factors.size());
  for (std::size_t f = 0; f < plan.factors.size(); ++f) {
    const auto& m = plan.factors[f];
    nz[f].resize(plan.k);
    for (int a = 0; a < plan.k; ++a)
      for (int c = 0; c < plan.k; ++c)
        if (m(a, c) != cplx{}) nz[f][a].emplace_back(c, m(a, c));
  }
  return nz;
}

std::vector<long> site_strides(int k, int sites) {
  std::vector<long> stride(sites);
  long s = 1;
  for (int i = sites - 1; i >= 0; --i) {
    stride[i] = s;
    s *= k;
  }
  return stride;
}

void expand_arrangement(const std::vector<SiteFactor>& arr, std::size_t pos, long row,
                        long col, cplx value, const FactorRows& nz,
                        const std::vector<long>& stride, int k,
                        std::vector<std::pair<int, cplx>>& out) {
  if (pos == arr.size()) {
    out.emplace_back(static_cast<int>(col), value);
    return;
  }
  const auto [site, factor] = arr[pos];
  const int digit = static_cast<int>((row / stride[site]) % k);
  for (const auto& [c, v] : nz[factor][digit]) {
    expand_arrangement(arr, pos + 1, row, col + (c - digit) * stride[site], value * v, nz,
                       stride, k, out);
  }
}

void assemble_row(const WordPlan& plan, const FactorRows& nz, const std::vector<long>& stride,
                  long row, std::vector<std::pair<int, cplx>>& scratch,
                  std::vector<std::pair<int, cplx>>& merged) {
  scratch.clear();
  for (const auto& arr : plan.arrangements)
    expand_arrangement(arr, 0, row, row, plan.weight, nz, stride, plan.k, scratch);
  std::sort(scratch.begin(), scratch.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  merged.clear();
  for (const auto& [c, v] : scratch) {
    if (!merged.empty() && merged.back().first == c)
      merged.back().second += v;
    else
      merged.emplace_back(c, v);
  }
  std::erase_if(merged, [](const auto& e) { return e.second == cplx{}; });
}

CsrMatrix pack_rows(int dim, std::vector<std::vector<std::pair<int, cplx>>>& rows) {
  CsrMatrix out;
  out.rows = out.cols = dim;
  out.row_ptr.assign(dim + 1, 0);
  for (int r = 0; r < dim; ++r) out.row_ptr[r + 1] = out.row_ptr[r] + static_cast<int>(rows[r].size());
  out.col.reserve(out.row_ptr.back());
  out.val.reserve(out.row_ptr.back());
  for (auto& row : rows) {
    for (const auto& [c, v] : row) {
      out.col.push_back(c);
      out.val.push_back(v);
    }
    std::vector<std::pair<int, cplx>>().swap(row);
  }
  return out;
}

long plan_dimension(const WordPlan& plan) {
  long dim = 1;
  for (int i = 0; i < plan.sites; ++i) dim *= plan.k;
  return dim;
}

cplx banded_term(const BandedProblem& p, int r) {
  const int M = p.M;
  Eigen::VectorXcd u(M + 1);
  for (int m = 0; m <= M; ++m) {
    const double lw = (*p.log_weight)(r, m);
    u[m] = lw == kNegInf ? cplx{} : p.coeffs[r + m] * std::exp(lw);
  }
  return u.dot(*p.block * u);
}

void husimi_row(const HusimiGrid& g, std::size_t it, std::vector<double>& logmag,
                std::vector<cplx>& b, std::span<double> out_row) {
  const int N = g.N;
  coherent_log_magnitudes(N, g.thetas[it], logmag);
  for (int k = 0; k <= N; ++k)
    b[k] = logmag[k] == kNegInf ? cplx{} : std::conj(g.coeffs[k]) * std::exp(logmag[k]);
  const double scale = (N + 1) / (4.0 * std::numbers::pi);
  for (std::size_t ip = 0; ip < g.phis.size(); ++ip) {
    const cplx z = std::polar(1.0, g.phis[ip]);
    cplx acc = b[0];
    for (int k = 1; k <= N; ++k) acc = acc * z + b[k];
    out_row[ip] = scale * std::pow(std::norm(acc), g.ell);
  }
}

}  // namespace

void coherent_log_magnitudes(int N, double theta, std::span<double> out) {
  const double lc = std::log(std::abs(std::cos(theta / 2)));
  const double ls = std::log(std::abs(std::sin(theta / 2)));
  const double lgn = std::lgamma(N + 1.0);
  for (int k = 0; k <= N; ++k) {
    const double half_log_binom = 0.5 * (lgn - std::lgamma(k + 1.0) - std::lgamma(N - k + 1.0));
    const double up = k == 0 ? 0.0 : k * lc;
    const double down = N - k == 0 ? 0.0 : (N - k) * ls;
    out[k] = half_log_binom + up + down;
  }
}

void set_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

// ---------------------------------------------------------------- serial

namespace serial {

double sum(std::span<const double> values) {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc;
}

cplx sum(std::span<const cplx> values) {
  cplx acc{};
  for (const cplx& v : values) acc += v;
  return acc;
}

double weighted_sum(std::span<const double> weights, std::span<const double> values) {
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * values[i];
  return acc;
}

void sparse_matvec(const CsrMatrix& a, std::span<const cplx> x, std::span<cplx> y) {
  for (int r = 0; r < a.rows; ++r) {
    cplx acc{};
    for (int p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) acc += a.val[p] * x[a.col[p]];
    y[r] = acc;
  }
}

CsrMatrix assemble_symmetrized(const WordPlan& plan) {
  const long dim = plan_dimension(plan);
  const auto nz = factor_rows(plan);
  const auto stride = site_strides(plan.k, plan.sites);
  std::vector<std::vector<std::pair<int, cplx>>> rows(dim);
  std::vector<std::pair<int, cplx>> scratch;
  for (long r = 0; r < dim; ++r) assemble_row(plan, nz, stride, r, scratch, rows[r]);
  return pack_rows(static_cast<int>(dim), rows);
}

cplx banded_expectation(const BandedProblem& problem) {
  cplx acc{};
  for (int r = 0; r <= problem.N - problem.M; ++r) acc += banded_term(problem, r);
  return acc;
}

std::vector<double> husimi_density(const HusimiGrid& grid) {
  std::vector<double> out(grid.thetas.size() * grid.phis.size());
  std::vector<double> logmag(grid.N + 1);
  std::vector<cplx> b(grid.N + 1);
  for (std::size_t it = 0; it < grid.thetas.size(); ++it)
    husimi_row(grid, it, logmag, b,
               std::span<double>(out).subspan(it * grid.phis.size(), grid.phis.size()));
  return out;
}

}  // namespace serial

// ---------------------------------------------------------------- omp

namespace omp {

double sum(std::span<const double> values) { return blocked_sum(values); }

cplx sum(std::span<const cplx> values) { return blocked_sum(values); }

double weighted_sum(std::span<const double> weights, std::span<const double> values) {
  const std::size_t nb = block_count(values.size());
  std::vector<double> partials(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(values.size(), lo + kReductionBlock);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += weights[i] * values[i];
    partials[b] = acc;
  }
  return pairwise_tree(std::move(partials));
}

void sparse_matvec(const CsrMatrix& a, std::span<const cplx> x, std::span<cplx> y) {
#pragma omp parallel for schedule(static)
  for (int r = 0; r < a.rows; ++r) {
    cplx acc{};
    for (int p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) acc += a.val[p] * x[a.col[p]];
    y[r] = acc;
  }
}

CsrMatrix assemble_symmetrized(const WordPlan& plan) {
  const long dim = plan_dimension(plan);
  const auto nz = factor_rows(plan);
  const auto stride = site_strides(plan.k, plan.sites);
  std::vector<std::vector<std::pair<int, cplx>>> rows(dim);
#pragma omp parallel
  {
    std::vector<std::pair<int, cplx>> scratch;
#pragma omp for schedule(dynamic, 64)
    for (long r = 0; r < dim; ++r) assemble_row(plan, nz, stride, r, scratch, rows[r]);
  }
  return pack_rows(static_cast<int>(dim), rows);
}

cplx banded_expectation(const BandedProblem& problem) {
  const int count = problem.N - problem.M + 1;
  if (count <= 0) return {};
  std::vector<cplx> terms(count);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < count; ++r) terms[r] = banded_term(problem, r);
  return blocked_sum(std::span<const cplx>(terms));
}

std::vector<double> husimi_density(const HusimiGrid& grid) {
  std::vector<double> out(grid.thetas.size() * grid.phis.size());
  const auto rows = static_cast<std::ptrdiff_t>(grid.thetas.size());
#pragma omp parallel
  {
    std::vector<double> logmag(grid.N + 1);
    std::vector<cplx> b(grid.N + 1);
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t it = 0; it < rows; ++it)
      husimi_row(grid, static_cast<std::size_t>(it), logmag, b,
                 std::span<double>(out).subspan(it * grid.phis.size(), grid.phis.size()));
  }
  return out;
}

}  // namespace omp

}  // namespace cwq::kernels
