// Serial reference against OpenMP kernels. Run with --benchmark_filter to pick one.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "cwq/dicke.hpp"
#include "cwq/kernels.hpp"

using namespace cwq;
using namespace cwq::kernels;

namespace {

std::vector<double> doubles(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

WordPlan pair_plan(int sites) {
  WordPlan p;
  p.sites = sites;
  Eigen::MatrixXcd s1(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s3 << 1, 0, 0, -1;
  p.factors = {s1, s3};
  for (int a = 0; a < sites; ++a)
    for (int b = 0; b < sites; ++b)
      if (a != b) p.arrangements.push_back({{a, 0}, {b, 1}});
  p.weight = 1.0 / p.arrangements.size();
  return p;
}

struct HusimiFixture {
  GroundStateResult gs;
  std::vector<cplx> c;
  std::vector<double> th, ph;
  explicit HusimiFixture(int N) : gs(ground_state(N, 1.0, 0.5)), c(gs.state.c.begin(), gs.state.c.end()) {
    for (int i = 0; i < 181; ++i) th.push_back(M_PI * i / 180);
    for (int i = 0; i < 360; ++i) ph.push_back(-M_PI + M_PI * (i + 0.5) / 180);
  }
  HusimiGrid grid() const { return {gs.N, 1.0, c, th, ph}; }
};

template <bool Parallel>
void BM_WeightedSum(benchmark::State& st) {
  const auto w = doubles(st.range(0)), v = doubles(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(Parallel ? omp::weighted_sum(w, v) : serial::weighted_sum(w, v));
}

template <bool Parallel>
void BM_Assemble(benchmark::State& st) {
  const auto plan = pair_plan(static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(Parallel ? omp::assemble_symmetrized(plan) : serial::assemble_symmetrized(plan));
}

template <bool Parallel>
void BM_Husimi(benchmark::State& st) {
  const HusimiFixture fx(static_cast<int>(st.range(0)));
  const auto g = fx.grid();
  for (auto _ : st) benchmark::DoNotOptimize(Parallel ? omp::husimi_density(g) : serial::husimi_density(g));
}

}  // namespace

BENCHMARK(BM_WeightedSum<false>)->Arg(1 << 20);
BENCHMARK(BM_WeightedSum<true>)->Arg(1 << 20);
BENCHMARK(BM_Assemble<false>)->Arg(10)->Arg(12);
BENCHMARK(BM_Assemble<true>)->Arg(10)->Arg(12);
BENCHMARK(BM_Husimi<false>)->Arg(100)->Arg(400);
BENCHMARK(BM_Husimi<true>)->Arg(100)->Arg(400);

BENCHMARK_MAIN();
