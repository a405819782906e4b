#include "cwq/tensor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "cwq/kernels.hpp"

namespace cwq {

namespace {

using kernels::SiteFactor;

SparseOperator from_csr(const kernels::CsrMatrix& csr) {
  Eigen::Map<const SparseOperator> view(csr.rows, csr.cols, static_cast<int>(csr.val.size()),
                                        csr.row_ptr.data(), csr.col.data(), csr.val.data());
  return SparseOperator(view);
}

kernels::CsrMatrix to_csr(const SparseOperator& m) {
  SparseOperator c = m;
  c.makeCompressed();
  kernels::CsrMatrix out;
  out.rows = static_cast<int>(c.rows());
  out.cols = static_cast<int>(c.cols());
  out.row_ptr.assign(c.outerIndexPtr(), c.outerIndexPtr() + c.rows() + 1);
  out.col.assign(c.innerIndexPtr(), c.innerIndexPtr() + c.nonZeros());
  out.val.assign(c.valuePtr(), c.valuePtr() + c.nonZeros());
  return out;
}

bool is_exact_identity(const SquareMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? cplx(1.0) : cplx(0.0))) return false;
  return true;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

constexpr double kMaxArrangements = 5e6;

// Places `count` copies of factor `f` on free sites, recursing over factors.
void place(const std::vector<int>& counts, std::size_t f, int first_site, int left,
           std::vector<bool>& used, std::vector<SiteFactor>& current,
           std::vector<std::vector<SiteFactor>>& out) {
  if (f == counts.size()) {
    out.push_back(current);
    return;
  }
  if (left == 0) {
    place(counts, f + 1, 0, f + 1 < counts.size() ? counts[f + 1] : 0, used, current, out);
    return;
  }
  for (int s = first_site; s < static_cast<int>(used.size()); ++s) {
    if (used[s]) continue;
    used[s] = true;
    current.push_back({s, static_cast<int>(f)});
    place(counts, f, s + 1, left - 1, used, current, out);
    current.pop_back();
    used[s] = false;
  }
}

Eigen::VectorXcd random_unit(long dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(dim);
  for (long i = 0; i < dim; ++i) v[i] = cplx(g(rng), g(rng));
  return v.normalized();
}

template <class Apply>
double lanczos_extreme(long dim, Apply apply) {
  const int max_steps = static_cast<int>(std::min<long>(dim, 300));
  std::vector<Eigen::VectorXcd> V;
  std::vector<double> alpha, beta;
  V.push_back(random_unit(dim, 0x5eedULL));
  double est = 0.0, prev = -1.0;
  int stable = 0;
  Eigen::VectorXcd w(dim);
  for (int j = 0; j < max_steps; ++j) {
    apply(V[j], w);
    const double a = V[j].dot(w).real();
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : V) w -= v.dot(w) * v;
    const double b = w.norm();

    Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), alpha.size());
    Eigen::VectorXd e = beta.empty() ? Eigen::VectorXd(0)
                                     : Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), beta.size()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    est = std::max(std::abs(es.eigenvalues()[0]), std::abs(es.eigenvalues()[d.size() - 1]));

    if (std::abs(est - prev) <= 1e-14 * std::max(est, 1e-300))
      ++stable;
    else
      stable = 0;
    prev = est;
    if (b <= 1e-12 * std::max(est, 1.0) || (j >= 10 && stable >= 3)) break;
    beta.push_back(b);
    V.push_back(w / b);
  }
  return est;
}

}  // namespace

long tensor_dimension(int k, int N) {
  if (k < 1 || N < 1) throw Error(ErrorKind::InvalidDimension, "tensor space needs k >= 1, N >= 1");
  long dim = 1;
  for (int i = 0; i < N; ++i) {
    dim *= k;
    if (dim > kTensorCap)
      throw Error(ErrorKind::SizeLimit, "k^N exceeds the cap " + std::to_string(kTensorCap) +
                                            " (k=" + std::to_string(k) + ", N=" + std::to_string(N) + ")");
  }
  return dim;
}

TensorOperator identity_operator(int k, int N) {
  const long dim = tensor_dimension(k, N);
  TensorOperator out{k, N, SparseOperator(dim, dim)};
  out.matrix.setIdentity();
  return out;
}

TensorOperator embed(const SquareMatrix& a, int site, int N) {
  if (site < 1 || site > N) throw Error(ErrorKind::DimensionMismatch, "site out of range");
  const int k = static_cast<int>(a.rows());
  tensor_dimension(k, N);
  kernels::WordPlan plan;
  plan.k = k;
  plan.sites = N;
  plan.factors = {a};
  plan.arrangements = {{{site - 1, 0}}};
  return TensorOperator{k, N, from_csr(kernels::omp::assemble_symmetrized(plan))};
}

TensorOperator symmetrize(const std::vector<SquareMatrix>& ops) {
  if (ops.empty()) throw Error(ErrorKind::DimensionMismatch, "symmetrize needs at least one factor");
  const int N = static_cast<int>(ops.size());
  const int k = static_cast<int>(ops[0].rows());
  for (const auto& m : ops)
    if (m.rows() != k || m.cols() != k) throw Error(ErrorKind::ShapeError, "factors must all be k x k");
  tensor_dimension(k, N);

  kernels::WordPlan plan;
  plan.k = k;
  plan.sites = N;
  std::vector<int> counts;
  for (const auto& m : ops) {
    if (is_exact_identity(m)) continue;
    auto it = std::find(plan.factors.begin(), plan.factors.end(), m);
    if (it == plan.factors.end()) {
      plan.factors.push_back(m);
      counts.push_back(1);
    } else {
      ++counts[it - plan.factors.begin()];
    }
  }

  const int identities = N - std::accumulate(counts.begin(), counts.end(), 0);
  double arrangements = factorial(N) / factorial(identities);
  for (int c : counts) arrangements /= factorial(c);
  if (arrangements > kMaxArrangements)
    throw Error(ErrorKind::SizeLimit, "too many distinct arrangements to symmetrize");

  if (!counts.empty()) {
    std::vector<bool> used(N, false);
    std::vector<SiteFactor> current;
    place(counts, 0, 0, counts[0], used, current, plan.arrangements);
  } else {
    plan.arrangements = {{}};
  }
  plan.weight = 1.0 / static_cast<double>(plan.arrangements.size());
  return TensorOperator{k, N, from_csr(kernels::omp::assemble_symmetrized(plan))};
}

TensorOperator inject(const TensorOperator& b, int N) {
  const int M = b.N, k = b.k;
  if (M > N) throw Error(ErrorKind::OrderError, "inject needs M <= N");
  tensor_dimension(k, N);
  if (b.dim() > 1024) throw Error(ErrorKind::SizeLimit, "inject expands operators with k^M <= 1024 only");

  // Orthonormal basis of M_k: E_0 = I/sqrt(k), then the orthonormal generators.
  std::vector<SquareMatrix> E{SquareMatrix::Identity(k, k) / std::sqrt(static_cast<double>(k))};
  for (const auto& g : build_su_basis(k, Convention::Orthonormal).generators) E.push_back(g);
  const int k2 = k * k;

  // Coefficient array over pair indices p_s = i_s*k + j_s, site 0 most significant.
  const long total = b.dim() * b.dim();
  std::vector<cplx> T(total);
  const Eigen::MatrixXcd dense = b.dense();
  std::vector<long> stride_k(M), stride_k2(M);
  for (int s = M - 1, sk = 1, sk2 = 1; s >= 0; --s, sk *= k, sk2 *= k2) {
    stride_k[s] = sk;
    stride_k2[s] = sk2;
  }
  for (long i = 0; i < b.dim(); ++i)
    for (long j = 0; j < b.dim(); ++j) {
      long p = 0;
      for (int s = 0; s < M; ++s) {
        const long is = (i / stride_k[s]) % k, js = (j / stride_k[s]) % k;
        p += (is * k + js) * stride_k2[s];
      }
      T[p] = dense(i, j);
    }
  // c_alpha = tr(E_alpha b) site by site (E_alpha Hermitian).
  std::vector<cplx> tmp(k2);
  for (int s = 0; s < M; ++s) {
    const long st = stride_k2[s];
    for (long base = 0; base < total; ++base) {
      if ((base / st) % k2 != 0) continue;
      for (int a = 0; a < k2; ++a) {
        cplx acc{};
        for (int p = 0; p < k2; ++p) acc += E[a](p % k, p / k) * T[base + p * st];
        tmp[a] = acc;
      }
      for (int a = 0; a < k2; ++a) T[base + a * st] = tmp[a];
    }
  }

  std::map<std::vector<int>, cplx> classes;
  for (long w = 0; w < total; ++w) {
    if (std::abs(T[w]) < 1e-15) continue;
    std::vector<int> letters;
    int identities = 0;
    for (int s = 0; s < M; ++s) {
      const int a = static_cast<int>((w / stride_k2[s]) % k2);
      if (a == 0)
        ++identities;
      else
        letters.push_back(a);
    }
    std::sort(letters.begin(), letters.end());
    classes[letters] += T[w] * std::pow(static_cast<double>(k), -0.5 * identities);
  }

  const long dim = tensor_dimension(k, N);
  SparseOperator acc(dim, dim);
  for (const auto& [letters, c] : classes) {
    if (std::abs(c) < 1e-15) continue;
    std::vector<SquareMatrix> ops(N, SquareMatrix::Identity(k, k));
    for (std::size_t i = 0; i < letters.size(); ++i) ops[i] = E[letters[i]];
    acc += c * symmetrize(ops).matrix;
  }
  acc.prune(cplx(0.0));
  return TensorOperator{k, N, acc};
}

Quantizer::Quantizer(const SuBasis& basis, int N)
    : basis_(basis), N_(N), dim_(tensor_dimension(basis.k, N)) {}

const SparseOperator& Quantizer::monomial(const Exponents& e) {
  auto it = cache_.find(e);
  if (it != cache_.end()) return it->second;
  const int L = total_degree(e);
  SparseOperator m(dim_, dim_);
  if (L == 0) {
    m.setIdentity();
  } else if (L <= N_) {
    std::vector<SquareMatrix> ops;
    ops.reserve(N_);
    for (std::size_t j = 0; j < e.size(); ++j)
      for (int p = 0; p < e[j]; ++p) ops.push_back(basis_.generators[j]);
    while (static_cast<int>(ops.size()) < N_) ops.push_back(SquareMatrix::Identity(basis_.k, basis_.k));
    m = symmetrize(ops).matrix;
  }
  return cache_.emplace(e, std::move(m)).first->second;
}

TensorOperator Quantizer::operator()(const Polynomial& f) {
  if (f.k() != basis_.k) throw Error(ErrorKind::DimensionMismatch, "polynomial and basis disagree on k");
  SparseOperator acc(dim_, dim_);
  for (const auto& [e, c] : f.terms()) acc += c * monomial(e);
  acc.prune(cplx(0.0));
  return TensorOperator{basis_.k, N_, acc};
}

TensorOperator quantize(const Polynomial& f, int N, const SuBasis& basis) {
  Quantizer q(basis, N);
  return q(f);
}

TensorOperator commutator(const TensorOperator& a, const TensorOperator& b) {
  if (a.k != b.k || a.N != b.N || a.dim() != b.dim())
    throw Error(ErrorKind::ShapeError, "commutator of operators with different shapes");
  SparseOperator ab = a.matrix * b.matrix;
  SparseOperator ba = b.matrix * a.matrix;
  SparseOperator c = ab - ba;
  c.prune(cplx(0.0));
  return TensorOperator{a.k, a.N, c};
}

double max_abs_difference(const SparseOperator& a, const SparseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::ShapeError, "operators with different shapes");
  SparseOperator d = a - b;
  double m = 0.0;
  for (int r = 0; r < d.outerSize(); ++r)
    for (SparseOperator::InnerIterator it(d, r); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

double operator_norm(const SparseOperator& a) {
  const long dim = a.rows();
  if (a.cols() != dim) throw Error(ErrorKind::ShapeError, "operator_norm needs a square operator");
  if (a.nonZeros() == 0) return 0.0;
  const SparseOperator adj = a.adjoint();
  double scale = 0.0;
  for (int r = 0; r < a.outerSize(); ++r)
    for (SparseOperator::InnerIterator it(a, r); it; ++it) scale = std::max(scale, std::abs(it.value()));
  const bool hermitian = max_abs_difference(a, adj) <= 1e-14 * scale;

  if (dim <= 256) {
    const Eigen::MatrixXcd d(a);
    if (hermitian) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d, Eigen::EigenvaluesOnly);
      return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d.adjoint() * d, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  }

  const auto csr = to_csr(a);
  if (hermitian) {
    return lanczos_extreme(dim, [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
      kernels::omp::sparse_matvec(csr, {x.data(), static_cast<std::size_t>(dim)},
                                  {y.data(), static_cast<std::size_t>(dim)});
    });
  }
  const auto csr_adj = to_csr(adj);
  Eigen::VectorXcd t(dim);
  const double top = lanczos_extreme(dim, [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
    kernels::omp::sparse_matvec(csr, {x.data(), static_cast<std::size_t>(dim)},
                                {t.data(), static_cast<std::size_t>(dim)});
    kernels::omp::sparse_matvec(csr_adj, {t.data(), static_cast<std::size_t>(dim)},
                                {y.data(), static_cast<std::size_t>(dim)});
  });
  return std::sqrt(std::max(0.0, top));
}

double operator_norm(const TensorOperator& a) { return operator_norm(a.matrix); }

double commutator_lemma_check(const std::vector<SquareMatrix>& a,
                              const std::vector<SquareMatrix>& aprime) {
  const int N = static_cast<int>(a.size());
  if (static_cast<int>(aprime.size()) != N)
    throw Error(ErrorKind::DimensionMismatch, "both factor lists need N entries");
  if (N > 6) throw Error(ErrorKind::SizeLimit, "commutator_lemma_check enumerates P(N) for N <= 6 only");

  const auto lhs = commutator(symmetrize(a), symmetrize(aprime));
  SparseOperator rhs(lhs.dim(), lhs.dim());
  std::vector<int> pi(N);
  std::iota(pi.begin(), pi.end(), 0);
  long perms = 0;
  do {
    std::vector<SquareMatrix> left(N), right(N);
    for (int i = 0; i < N; ++i) {
      left[i] = a[i] * aprime[pi[i]];
      right[i] = aprime[pi[i]] * a[i];
    }
    rhs += symmetrize(left).matrix;
    rhs -= symmetrize(right).matrix;
    ++perms;
  } while (std::next_permutation(pi.begin(), pi.end()));
  rhs /= static_cast<double>(perms);
  return max_abs_difference(lhs.matrix, rhs);
}

cplx product_state_functional(const StateCoordinates& omega, const SuBasis& basis,
                              const TensorOperator& a) {
  if (omega.k != a.k) throw Error(ErrorKind::DimensionMismatch, "state and operator disagree on k");
  const SquareMatrix rho = f_k(omega, basis).rho;
  const int k = a.k, N = a.N;
  std::vector<long> stride(N);
  for (int s = N - 1, st = 1; s >= 0; --s, st *= k) stride[s] = st;
  cplx acc{};
  for (int r = 0; r < a.matrix.outerSize(); ++r)
    for (SparseOperator::InnerIterator it(a.matrix, r); it; ++it) {
      cplx prod = it.value();
      const long i = it.row(), j = it.col();
      for (int s = 0; s < N && prod != cplx{}; ++s)
        prod *= rho((j / stride[s]) % k, (i / stride[s]) % k);
      acc += prod;
    }
  return acc;
}

TensorOperator curie_weiss_tensor_hamiltonian(int N, double J, double B) {
  const long dim = tensor_dimension(2, N);
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(dim) * (N + 1));
  for (long i = 0; i < dim; ++i) {
    const double m = N - 2.0 * std::popcount(static_cast<unsigned long>(i));
    trip.emplace_back(i, i, -J / (2.0 * N * N) * m * m);
    for (int s = 0; s < N; ++s) trip.emplace_back(i, i ^ (1L << s), -B / N);
  }
  SparseOperator h(dim, dim);
  h.setFromTriplets(trip.begin(), trip.end());
  h.prune(cplx(0.0));
  return TensorOperator{2, N, h};
}

TensorOperator permute_sites(const TensorOperator& a, const std::vector<int>& perm) {
  const int k = a.k, N = a.N;
  if (static_cast<int>(perm.size()) != N) throw Error(ErrorKind::DimensionMismatch, "permutation length differs from N");
  std::vector<long> stride(N);
  for (int s = N - 1, st = 1; s >= 0; --s, st *= k) stride[s] = st;
  auto map = [&](long i) {
    long out = 0;
    for (int s = 0; s < N; ++s) out += ((i / stride[s]) % k) * stride[perm[s]];
    return out;
  };
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(a.matrix.nonZeros());
  for (int r = 0; r < a.matrix.outerSize(); ++r)
    for (SparseOperator::InnerIterator it(a.matrix, r); it; ++it)
      trip.emplace_back(map(it.row()), map(it.col()), it.value());
  SparseOperator m(a.dim(), a.dim());
  m.setFromTriplets(trip.begin(), trip.end());
  return TensorOperator{k, N, m};
}

TensorOperator flip_all(const TensorOperator& a) {
  if (a.k != 2) throw Error(ErrorKind::InvalidDimension, "U_N is defined for k = 2");
  const long mask = a.dim() - 1;
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(a.matrix.nonZeros());
  for (int r = 0; r < a.matrix.outerSize(); ++r)
    for (SparseOperator::InnerIterator it(a.matrix, r); it; ++it)
      trip.emplace_back(it.row() ^ mask, it.col() ^ mask, it.value());
  SparseOperator m(a.dim(), a.dim());
  m.setFromTriplets(trip.begin(), trip.end());
  return TensorOperator{2, a.N, m};
}

namespace {

double inv_sqrt_binom(int N, int k) {
  return std::exp(-0.5 * (std::lgamma(N + 1.0) - std::lgamma(k + 1.0) - std::lgamma(N - k + 1.0)));
}

}  // namespace

Eigen::VectorXcd dicke_to_tensor(const Eigen::VectorXcd& c) {
  const int N = static_cast<int>(c.size()) - 1;
  const long dim = tensor_dimension(2, N);
  Eigen::VectorXcd v(dim);
  for (long i = 0; i < dim; ++i) {
    const int up = N - std::popcount(static_cast<unsigned long>(i));
    v[i] = c[up] * inv_sqrt_binom(N, up);
  }
  return v;
}

Eigen::MatrixXcd compress_to_symmetric(const TensorOperator& a) {
  if (a.k != 2) throw Error(ErrorKind::InvalidDimension, "Dicke compression is defined for k = 2");
  const int N = a.N;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  for (int r = 0; r < a.matrix.outerSize(); ++r)
    for (SparseOperator::InnerIterator it(a.matrix, r); it; ++it) {
      const int ki = N - std::popcount(static_cast<unsigned long>(it.row()));
      const int kj = N - std::popcount(static_cast<unsigned long>(it.col()));
      out(ki, kj) += it.value() * inv_sqrt_binom(N, ki) * inv_sqrt_binom(N, kj);
    }
  return out;
}

}  // namespace cwq
