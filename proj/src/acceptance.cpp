#include "cwq/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "cwq/coherent.hpp"
#include "cwq/dicke.hpp"
#include "cwq/limits.hpp"
#include "cwq/tensor.hpp"

namespace cwq {

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool within_rel(double value, double target, double rel) {
  return std::abs(value - target) <= rel * std::abs(target);
}

SubCheck check(std::string name, bool pass, std::string detail, bool unattainable = false) {
  return SubCheck{std::move(name), pass, std::move(detail), unattainable};
}

GroundStateResult cw(int N) { return ground_state(N, 1.0, 0.5); }

CriterionResult table1() {
  CriterionResult r{1, "Table 1 reproduction", {}, {}, 0.0};
  const auto t0 = Clock::now();
  const std::pair<int, double> reference[] = {{10, 0.0060}, {20, 4.09e-4}, {30, 3.89e-5}};
  for (auto [N, target] : reference) {
    const double v = table1_integral(cw(N)).value;
    r.checks.push_back(check(fmt::format("N={} within 5% of {}", N, target), within_rel(v, target, 0.05),
                             fmt::format("{:.6g}", v)));
  }
  // The reference N=60 entry itself is -1.4394e-5.
  for (int N : {60, 90, 120, 150, 180}) {
    const double v = table1_integral(cw(N)).value;
    r.checks.push_back(check(fmt::format("N={} |value| <= 1e-5", N), std::abs(v) <= 1e-5,
                             fmt::format("{:.6g}", v), N == 60));
  }
  const double t = seconds_since(t0);
  r.checks.push_back(check("runtime < 30 s", t < 30.0, fmt::format("{:.2f} s", t)));
  return r;
}

CriterionResult table2() {
  CriterionResult r{2, "Table 2 reproduction", {}, {}, 0.0};
  const auto t0 = Clock::now();
  std::vector<double> one, half;
  for (int N = 10; N <= 150; N += 10) {
    const auto gs = cw(N);
    one.push_back(table2_integral(gs, 1.0).value);
    half.push_back(table2_integral(gs, 0.5).value);
  }
  const struct {
    const char* label;
    double value, target;
  } pts[] = {{"ell=1 N=10", one.front(), 0.2559},
             {"ell=1 N=150", one.back(), 0.0540},
             {"ell=1/2 N=10", half.front(), 0.4185},
             {"ell=1/2 N=150", half.back(), 0.1409}};
  for (const auto& p : pts)
    r.checks.push_back(check(fmt::format("{} within 1% of {}", p.label, p.target),
                             within_rel(p.value, p.target, 0.01), fmt::format("{:.6g}", p.value)));
  auto monotone = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] > v[i - 1]) return false;
    return true;
  };
  r.checks.push_back(check("ell=1 non-increasing over N=10..150", monotone(one), ""));
  r.checks.push_back(check("ell=1/2 non-increasing over N=10..150", monotone(half), ""));
  const double t = seconds_since(t0);
  r.checks.push_back(check("runtime < 2 min", t < 120.0, fmt::format("{:.2f} s", t)));
  return r;
}

CriterionResult table3() {
  CriterionResult r{3, "Table 3 reproduction", {}, {}, 0.0};
  const auto gs50 = cw(50);
  const auto h = table3_integrals(gs50, 0.5);
  const auto o = table3_integrals(gs50, 1.0);
  r.checks.push_back(check("N=50 ell=1/2 A within 0.5% of 2.7759", within_rel(h.a, 2.7759, 0.005),
                           fmt::format("{:.6g}", h.a)));
  r.checks.push_back(check("N=50 ell=1/2 B within 0.5% of 2.7719", within_rel(h.b, 2.7719, 0.005),
                           fmt::format("{:.6g}", h.b)));
  r.checks.push_back(check("N=50 ell=1 A within 1e-3 of 0.9997", std::abs(o.a - 0.9997) <= 1e-3,
                           fmt::format("{:.6g}", o.a)));
  r.checks.push_back(check("N=50 ell=1 B within 1e-3 of 0.9997", std::abs(o.b - 0.9997) <= 1e-3,
                           fmt::format("{:.6g}", o.b)));
  const auto h140 = table3_integrals(cw(140), 0.5);
  const double two_root_two = 2.0 * std::sqrt(2.0);
  r.checks.push_back(check("N=140 ell=1/2 A within 1% of 2 sqrt 2",
                           within_rel(h140.a, two_root_two, 0.01), fmt::format("{:.6g}", h140.a)));
  r.checks.push_back(check("N=140 ell=1/2 B within 1% of 2 sqrt 2",
                           within_rel(h140.b, two_root_two, 0.01), fmt::format("{:.6g}", h140.b)));
  return r;
}

Polynomial random_polynomial(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> coeff(-2, 2), keep(0, 2);
  Polynomial f(2);
  for (int a = 0; a <= max_degree; ++a)
    for (int b = 0; a + b <= max_degree; ++b)
      for (int c = 0; a + b + c <= max_degree; ++c) {
        if (keep(rng) != 0) continue;
        f.add_term({a, b, c}, cplx(coeff(rng), coeff(rng)));
      }
  return f;
}

CriterionResult oracle_equivalence(bool quick) {
  CriterionResult r{4, "Oracle equivalence (dicke vs tensor)", {}, {}, 0.0};
  const auto pauli = build_su_basis(2, Convention::Pauli);
  std::mt19937_64 rng(4);
  std::vector<Polynomial> polys;
  for (int i = 0; i < 50; ++i) polys.push_back(random_polynomial(rng, 3));

  double worst = 0.0;
  const int top = quick ? 8 : 10;
  for (int N = 1; N <= top; ++N) {
    const auto gs = cw(N);
    const Eigen::VectorXcd psi = dicke_to_tensor(gs.state.c);
    Quantizer q(pauli, N);
    for (const auto& f : polys) {
      const auto qf = q(f);
      const cplx brute = psi.dot(qf.matrix * psi);
      worst = std::max(worst, std::abs(brute - q_expectation(f, gs)));
    }
  }
  r.checks.push_back(check(fmt::format("50 random cubics, N=1..{}: |dicke - tensor| <= 1e-10", top),
                           worst <= 1e-10, fmt::format("max {:.3g}", worst)));

  double hworst = 0.0;
  for (int N = 1; N <= 12; ++N) {
    const Eigen::MatrixXcd projected = compress_to_symmetric(curie_weiss_tensor_hamiltonian(N, 1.0, 0.5));
    const Eigen::MatrixXcd tri = cw_hamiltonian(N, 1.0, 0.5).dense().cast<cplx>();
    hworst = std::max(hworst, (projected - tri).cwiseAbs().maxCoeff());
  }
  r.checks.push_back(check("cw_hamiltonian vs projected tensor Hamiltonian, N<=12, <= 1e-12",
                           hworst <= 1e-12, fmt::format("max {:.3g}", hworst)));
  return r;
}

CriterionResult dgr() {
  CriterionResult r{5, "DGR defect", {}, {}, 0.0};
  const auto pauli = build_su_basis(2, Convention::Pauli);
  double worst = 0.0;
  for (int N = 1; N <= 12; ++N) {
    Quantizer q(pauli, N);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        worst = std::max(worst, dgr_defect(Polynomial::variable(2, a), Polynomial::variable(2, b), q));
  }
  r.checks.push_back(check("degree-1 pairs, N<=12: defect <= 1e-12", worst <= 1e-12,
                           fmt::format("max {:.3g}", worst)));

  const Polynomial x1 = Polynomial::variable(2, 0), x3 = Polynomial::variable(2, 2);
  std::vector<int> ns{4, 5, 6, 7, 8, 9, 10, 11, 12};
  const auto sweep = dgr_sweep(x3 * x3, x1, ns, pauli);
  std::string values;
  for (const auto& [N, v] : sweep.points) values += fmt::format("{}:{:.3g} ", N, v);
  r.checks.push_back(check("(x3^2, x1) strictly decreasing over N=4..12", sweep.strictly_decreasing(),
                           values, true));
  const bool slope_ok = sweep.fit && std::abs(sweep.fit->slope + 1.0) <= 0.3;
  r.checks.push_back(check("(x3^2, x1) log-log slope -1 +- 0.3", slope_ok,
                           sweep.fit ? fmt::format("slope {:.3g}", sweep.fit->slope)
                                     : std::string("no fit: defect vanishes identically"),
                           true));

  const auto other = dgr_sweep(x3 * x3, x1 * x1, ns, pauli);
  std::string ov;
  for (const auto& [N, v] : other.points) ov += fmt::format("{}:{:.4g} ", N, v);
  r.info.push_back(fmt::format("(x3^2, x1^2) defect {}slope {:.3f}, strictly decreasing: {}", ov,
                               other.fit ? other.fit->slope : 0.0, other.strictly_decreasing()));
  return r;
}

CriterionResult combinatorics() {
  CriterionResult r{6, "Combinatorics", {}, {}, 0.0};
  bool all = true;
  std::string bad;
  for (int N = 1; N <= 20; ++N) {
    Int128 nfact = 1;
    for (int i = 2; i <= N; ++i) nfact *= i;
    for (int M = 0; M <= std::min(6, N); ++M)
      for (int L = 0; L <= M; ++L) {
        Int128 s = 0;
        for (int K = 0; K <= L; ++K) s += perm_count(N, L, M, K);
        if (s != nfact) {
          all = false;
          bad = fmt::format("N={} L={} M={}", N, L, M);
        }
      }
  }
  r.checks.push_back(check("sum_K #P(N)_K = N! for N<=20, L<=M<=6", all, bad));
  const double c = c_n_ratio(10000, 2, 3);
  r.checks.push_back(check("c_n_ratio(1e4, 2, 3) within 1e-2 of 1", std::abs(c - 1.0) <= 1e-2,
                           fmt::format("{:.8g}", c)));
  std::vector<double> p;
  std::string pv;
  for (int N : {10, 20, 40, 80}) {
    p.push_back(p3_fraction(N, 2, 3));
    pv += fmt::format("{}:{:.4g} ", N, p.back());
  }
  bool dec = true;
  for (std::size_t i = 1; i < p.size(); ++i) dec = dec && p[i] < p[i - 1];
  r.checks.push_back(check("p3_fraction(N, 2, 3) decreasing over N=10,20,40,80", dec, pv));
  return r;
}

CriterionResult coherent_identities(bool quick) {
  CriterionResult r{7, "Coherent-state identities", {}, {}, 0.0};
  double worst = 0.0;
  int worst_n = 0;
  std::vector<int> ns;
  if (quick)
    ns = {1, 2, 3, 5, 10, 20, 50, 100, 150, 200};
  else
    for (int N = 1; N <= 200; ++N) ns.push_back(N);
  for (int N : ns) {
    const auto res = resolution_identity_check(N, matched_quadrature(N), 2, 1000 + N);
    if (res.residual > worst) {
      worst = res.residual;
      worst_n = N;
    }
  }
  r.checks.push_back(check(fmt::format("resolution of identity, {} values of N up to 200, <= 1e-10", ns.size()),
                           worst <= 1e-10, fmt::format("max {:.3g} at N={}", worst, worst_n)));
  const SpherePoint center{0.7, 0.3};
  for (double ell : {0.5, 1.0}) {
    const double v = overlap_integral(60, ell, center, matched_quadrature(60));
    const double exact = ell * 61.0 / (ell * 60.0 + 1.0);
    r.checks.push_back(check(fmt::format("N=60 ell={} constant ell(N+1)/(ell N+1)", ell),
                             std::abs(v - exact) <= 1e-10, fmt::format("deviation {:.3g}", std::abs(v - exact))));
  }
  return r;
}

CriterionResult classical_limit() {
  CriterionResult r{8, "Classical limit of the CW ground state", {}, {}, 0.0};
  const auto t0 = Clock::now();
  const std::vector<int> ns{100, 200, 400, 800};
  const Polynomial x = Polynomial::variable(2, 0), z = Polynomial::variable(2, 2);
  const std::pair<const char*, Polynomial> fs[] = {{"x", x}, {"z^2", z * z}};
  const double targets[] = {0.5, 0.75};
  for (int i = 0; i < 2; ++i) {
    const auto s = classical_limit_sweep(fs[i].second, ns, 1.0, 0.5);
    std::string ev;
    for (const auto& [N, e] : s.error.points) ev += fmt::format("{}:{:.4g} ", N, e);
    r.checks.push_back(check(fmt::format("f={} target {}", fs[i].first, targets[i]),
                             std::abs(s.target - targets[i]) <= 1e-12, fmt::format("{:.15g}", s.target)));
    r.checks.push_back(check(fmt::format("f={} error non-increasing over N=100..800", fs[i].first),
                             s.error.non_increasing(), ev));
    const double last = s.error.points.back().second;
    r.checks.push_back(check(fmt::format("f={} error <= 0.1 at N=800", fs[i].first), last <= 0.1,
                             fmt::format("{:.4g}", last)));
  }
  const double t = seconds_since(t0);
  r.checks.push_back(check("runtime < 1 min", t < 60.0, fmt::format("{:.2f} s", t)));
  return r;
}

CriterionResult ground_structure() {
  CriterionResult r{9, "Ground-state structure", {}, {}, 0.0};
  double neg = 0.0, asym = 0.0;
  int purified = 0;
  for (int N = 1; N <= 200; ++N) {
    const auto gs = cw(N);
    const Eigen::VectorXd c = gs.state.c.real();
    neg = std::min(neg, c.minCoeff());
    asym = std::max(asym, (c - c.reverse()).cwiseAbs().maxCoeff());
    purified += gs.purified;
  }
  r.checks.push_back(check("c(k) >= -1e-9 for N=1..200", neg >= -1e-9, fmt::format("min {:.3g}", neg)));
  r.checks.push_back(check("c(k) = c(N-k) to 1e-9 for N=1..200", asym <= 1e-9, fmt::format("max {:.3g}", asym)));
  r.checks.push_back(check("purified regime reached", purified > 0,
                           fmt::format("{} of 200 values of N below the gap threshold", purified)));

  // 2-degree cells: theta_j = j pi/90, phi_l = -pi + 2 pi (l + 1/2)/180
  const int nt = 91, np = 180;
  const double dt = kPi / (nt - 1), dp = 2 * kPi / np;
  const auto [plus, minus] = peak_points(1.0, 0.5);
  for (int N : {50, 100, 150, 200}) {
    const auto prof = husimi_profile(cw(N).state, 1.0, nt, np);
    std::size_t bu = 0, bl = 0;
    double vu = -1, vl = -1;
    for (std::size_t it = 0; it < prof.thetas.size(); ++it)
      for (std::size_t ip = 0; ip < prof.phis.size(); ++ip) {
        const double v = prof.at(it, ip);
        if (prof.thetas[it] < kPi / 2 && v > vu) { vu = v; bu = it * np + ip; }
        if (prof.thetas[it] > kPi / 2 && v > vl) { vl = v; bl = it * np + ip; }
      }
    auto near = [&](std::size_t idx, const SpherePoint& p) {
      const double t = prof.thetas[idx / np], ph = prof.phis[idx % np];
      return std::abs(t - p.theta) <= dt && std::abs(ph - p.phi) <= dp;
    };
    r.checks.push_back(check(
        fmt::format("N={} Husimi peaks at (pi/6,0), (5pi/6,0) within one 2-degree cell", N),
        near(bu, plus) && near(bl, minus),
        fmt::format("({:.4f},{:.4f}) ({:.4f},{:.4f})", prof.thetas[bu / np], prof.phis[bu % np],
                    prof.thetas[bl / np], prof.phis[bl % np])));
  }
  return r;
}

CriterionResult hamiltonian_gap() {
  CriterionResult r{10, "Hamiltonian gap O(1/N)", {}, {}, 0.0};
  std::string vals;
  bool ok = true;
  for (int N = 4; N <= 12; ++N) {
    const double v = N * hamiltonian_gap_norm(N, 1.0, 0.5);
    ok = ok && v <= 1.0;
    vals += fmt::format("{}:{:.4f} ", N, v);
  }
  r.checks.push_back(check("N * ||h - Q(h0)|| <= J for N=4..12", ok, vals));
  return r;
}

CriterionResult fwhm_scaling() {
  CriterionResult r{11, "fwhm scaling", {}, {}, 0.0};
  std::vector<double> xs, ws;
  std::string vals;
  for (int N : {50, 100, 200, 400}) {
    const auto f = fwhm_scan(cw(N), 1.0);
    xs.push_back(N);
    ws.push_back(f.width_theta);
    vals += fmt::format("{}:{:.4f}/{:.4f} ", N, f.width_theta, f.width_phi);
  }
  const auto fit = loglog_fit(xs, ws);
  r.checks.push_back(check("theta-width log-log slope -0.5 +- 0.1", fit && std::abs(fit->slope + 0.5) <= 0.1,
                           fmt::format("slope {:.4f}", fit ? fit->slope : 0.0)));
  r.info.push_back("widths theta/phi " + vals);
  return r;
}

}  // namespace

bool CriterionResult::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

bool CriterionResult::pass_or_documented() const {
  for (const auto& c : checks)
    if (!c.pass && !c.unattainable) return false;
  return true;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  const std::function<CriterionResult()> suites[] = {
      table1,
      table2,
      table3,
      [&] { return oracle_equivalence(options.quick); },
      dgr,
      combinatorics,
      [&] { return coherent_identities(options.quick); },
      classical_limit,
      ground_structure,
      hamiltonian_gap,
      fwhm_scaling,
  };
  std::vector<CriterionResult> out;
  for (const auto& suite : suites) {
    const auto t0 = Clock::now();
    CriterionResult r = suite();
    r.seconds = seconds_since(t0);
    if (options.on_result) options.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::string s = fmt::format("{} criterion {:>2}: {} ({:.2f} s)\n", r.pass() ? "PASS" : "FAIL", r.id,
                              r.title, r.seconds);
  for (const auto& c : r.checks)
    s += fmt::format("    {} {}{}{}\n", c.pass ? "ok  " : (c.unattainable ? "RED*" : "FAIL"), c.name,
                     c.detail.empty() ? "" : ": ", c.detail);
  for (const auto& i : r.info) s += fmt::format("    info {}\n", i);
  return s;
}

}  // namespace cwq
