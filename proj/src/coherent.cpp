#include "cwq/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cwq/kernels.hpp"

namespace cwq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double density_scale(int N) { return (N + 1) / (4.0 * kPi); }

// <Psi, Omega> on a product grid, row-major (theta, phi).
std::vector<cplx> amplitudes(const DickeVector& psi, const std::vector<double>& thetas,
                             const std::vector<double>& phis) {
  const int N = psi.N;
  std::vector<cplx> out(thetas.size() * phis.size());
  const auto rows = static_cast<std::ptrdiff_t>(thetas.size());
#pragma omp parallel
  {
    std::vector<double> logmag(N + 1);
    std::vector<cplx> b(N + 1);
#pragma omp for schedule(static)
    for (std::ptrdiff_t it = 0; it < rows; ++it) {
      kernels::coherent_log_magnitudes(N, thetas[it], logmag);
      for (int k = 0; k <= N; ++k)
        b[k] = logmag[k] == kNegInf ? cplx{} : std::conj(psi.c[k]) * std::exp(logmag[k]);
      for (std::size_t ip = 0; ip < phis.size(); ++ip) {
        const cplx z = std::polar(1.0, phis[ip]);
        cplx acc = b[0];
        for (int k = 1; k <= N; ++k) acc = acc * z + b[k];
        out[it * phis.size() + ip] = acc;
      }
    }
  }
  return out;
}

// (N+1)/(4pi) ((1+cos Phi)/2)^(N ell) to `center` at every node.
std::vector<double> peak_density(int N, double ell, const SpherePoint& center,
                                 const SphereQuadrature& quad) {
  std::vector<double> out(quad.size());
  const double scale = density_scale(N);
  for (std::size_t it = 0; it < quad.thetas.size(); ++it)
    for (std::size_t ip = 0; ip < quad.phis.size(); ++ip) {
      const double half = 0.5 * (1.0 + cos_angle(center, {quad.thetas[it], quad.phis[ip]}));
      out[it * quad.phis.size() + ip] = half <= 0.0 ? 0.0 : scale * std::exp(ell * N * std::log(half));
    }
  return out;
}

double integrate(const SphereQuadrature& quad, const std::vector<double>& values) {
  const auto w = quad.weights();
  return kernels::omp::weighted_sum(w, values);
}

bool under_resolved(const SphereQuadrature& quad, int N) {
  return quad.exactness >= 0 && quad.exactness < N;
}

struct TableFields {
  std::vector<double> psi, plus, minus;
};

TableFields table_fields(const GroundStateResult& gs, double ell, const SphereQuadrature& quad) {
  const auto [p, m] = peak_points(gs.J, gs.B);
  TableFields f;
  f.psi = husimi_on(gs.state, ell, quad.thetas, quad.phis).values;
  f.plus = peak_density(gs.N, ell, p, quad);
  f.minus = peak_density(gs.N, ell, m, quad);
  return f;
}

}  // namespace

std::vector<SpherePoint> SphereQuadrature::nodes() const {
  std::vector<SpherePoint> out;
  out.reserve(size());
  for (double t : thetas)
    for (double p : phis) out.push_back({t, p});
  return out;
}

std::vector<double> SphereQuadrature::weights() const {
  std::vector<double> out;
  out.reserve(size());
  for (double wt : theta_weights)
    for (double wp : phi_weights) out.push_back(wt * wp);
  return out;
}

double SphereQuadrature::total_weight() const {
  const auto w = weights();
  return kernels::omp::sum(std::span<const double>(w));
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "Gauss-Legendre needs n >= 1");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  return {x, w};
}

SphereQuadrature build_quadrature(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) throw Error(ErrorKind::InvalidDimension, "quadrature needs n_theta, n_phi >= 1");
  SphereQuadrature q;
  auto [x, w] = gauss_legendre(n_theta);
  // descending cos(theta) gives ascending theta
  for (int i = n_theta - 1; i >= 0; --i) {
    q.thetas.push_back(std::acos(x[i]));
    q.theta_weights.push_back(w[i]);
  }
  for (int l = 0; l < n_phi; ++l) {
    q.phis.push_back(-kPi + 2.0 * kPi * (l + 1) / n_phi);
    q.phi_weights.push_back(2.0 * kPi / n_phi);
  }
  q.exactness = std::min(2 * n_theta - 1, n_phi - 1);
  return q;
}

SphereQuadrature matched_quadrature(int N) { return build_quadrature(N + 2, 2 * N + 4); }

SphereQuadrature tabulation_grid(int N) {
  if (N < 1) throw Error(ErrorKind::InvalidDimension, "tabulation grid needs N >= 1");
  SphereQuadrature q;
  const double h = kPi / N;
  for (int j = 0; j <= N; ++j) {
    const double t = j * h;
    q.thetas.push_back(t);
    q.theta_weights.push_back((j == 0 || j == N ? 0.5 : 1.0) * h * std::sin(t));
  }
  for (int l = 0; l < N; ++l) {
    q.phis.push_back(-kPi + 2.0 * kPi * l / N);
    q.phi_weights.push_back(2.0 * kPi / N);
  }
  q.exactness = -1;
  return q;
}

DickeVector coherent_components(int N, const SpherePoint& p) {
  if (N < 1) throw Error(ErrorKind::InvalidDimension, "coherent states need N >= 1");
  std::vector<double> logmag(N + 1);
  kernels::coherent_log_magnitudes(N, p.theta, logmag);
  DickeVector v;
  v.N = N;
  v.c.resize(N + 1);
  for (int k = 0; k <= N; ++k)
    v.c[k] = logmag[k] == kNegInf ? cplx{} : std::polar(std::exp(logmag[k]), (N - k) * p.phi);
  v.normalized = true;
  return v;
}

double cos_angle(const SpherePoint& p, const SpherePoint& q) {
  return std::cos(p.theta) * std::cos(q.theta) +
         std::sin(p.theta) * std::sin(q.theta) * std::cos(p.phi - q.phi);
}

double overlap_squared(const SpherePoint& p, const SpherePoint& q, int N) {
  const double half = 0.5 * (1.0 + cos_angle(p, q));
  if (half <= 0.0) return 0.0;
  return std::exp(N * std::log(std::min(half, 1.0)));
}

double husimi_value(const DickeVector& psi, double ell, const SpherePoint& p) {
  return husimi_on(psi, ell, {p.theta}, {p.phi}).values.front();
}

HusimiProfile husimi_on(const DickeVector& psi, double ell, const std::vector<double>& thetas,
                        const std::vector<double>& phis) {
  HusimiProfile h;
  h.N = psi.N;
  h.ell = ell;
  h.thetas = thetas;
  h.phis = phis;
  kernels::HusimiGrid g;
  g.N = psi.N;
  g.ell = ell;
  g.coeffs = {psi.c.data(), static_cast<std::size_t>(psi.c.size())};
  g.thetas = h.thetas;
  g.phis = h.phis;
  h.values = kernels::omp::husimi_density(g);
  return h;
}

HusimiProfile husimi_profile(const DickeVector& psi, double ell, int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 1) throw Error(ErrorKind::InvalidDimension, "profile grid too small");
  std::vector<double> thetas(n_theta), phis(n_phi);
  for (int j = 0; j < n_theta; ++j) thetas[j] = j * kPi / (n_theta - 1);
  for (int l = 0; l < n_phi; ++l) phis[l] = -kPi + 2.0 * kPi * (l + 0.5) / n_phi;
  return husimi_on(psi, ell, thetas, phis);
}

ResolutionCheck resolution_identity_check(int N, const SphereQuadrature& quad, int trials,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto random_state = [&] {
    DickeVector v;
    v.N = N;
    v.c.resize(N + 1);
    for (int k = 0; k <= N; ++k) v.c[k] = cplx(g(rng), g(rng));
    v.c.normalize();
    v.normalized = true;
    return v;
  };
  const auto w = quad.weights();
  ResolutionCheck out;
  out.under_resolved = under_resolved(quad, N);
  for (int t = 0; t < trials; ++t) {
    const auto psi = random_state(), phi = random_state();
    const auto a = amplitudes(psi, quad.thetas, quad.phis);
    const auto b = amplitudes(phi, quad.thetas, quad.phis);
    std::vector<cplx> terms(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) terms[i] = w[i] * a[i] * std::conj(b[i]);
    const cplx lhs = density_scale(N) * kernels::omp::sum(std::span<const cplx>(terms));
    out.residual = std::max(out.residual, std::abs(lhs - psi.c.dot(phi.c)));
  }
  return out;
}

double overlap_integral(int N, double ell, const SpherePoint& center, const SphereQuadrature& quad) {
  return ell * integrate(quad, peak_density(N, ell, center, quad));
}

std::pair<SpherePoint, SpherePoint> peak_points(double J, double B) {
  if (B >= J) return {{kPi / 2, 0.0}, {kPi / 2, 0.0}};
  const double z = std::sqrt(1.0 - (B / J) * (B / J));
  return {{std::acos(z), 0.0}, {std::acos(-z), 0.0}};
}

SphereQuadrature table_quadrature(int N, TableRule rule) {
  return rule == TableRule::Tabulation ? tabulation_grid(N) : matched_quadrature(N);
}

TableIntegral table1_integral(const GroundStateResult& gs, TableRule rule) {
  const auto quad = table_quadrature(gs.N, rule);
  const auto f = table_fields(gs, 1.0, quad);
  std::vector<double> v(f.psi.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.psi[i] - 0.5 * f.plus[i] - 0.5 * f.minus[i];
  return {integrate(quad, v), under_resolved(quad, gs.N)};
}

TableIntegral table2_integral(const GroundStateResult& gs, double ell, TableRule rule) {
  const auto quad = table_quadrature(gs.N, rule);
  const auto f = table_fields(gs, ell, quad);
  const double c = std::pow(2.0, -ell);
  std::vector<double> v(f.psi.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(f.psi[i] - c * (f.plus[i] + f.minus[i]));
  return {integrate(quad, v), under_resolved(quad, gs.N)};
}

Table3Integral table3_integrals(const GroundStateResult& gs, double ell, TableRule rule) {
  const auto quad = table_quadrature(gs.N, rule);
  const auto f = table_fields(gs, ell, quad);
  const double c = std::pow(2.0, -ell);
  std::vector<double> peaks(f.psi.size());
  for (std::size_t i = 0; i < peaks.size(); ++i) peaks[i] = c * (f.plus[i] + f.minus[i]);
  return {integrate(quad, f.psi), integrate(quad, peaks), under_resolved(quad, gs.N)};
}

double assumption_c_sup(const GroundStateResult& gs, double ell, double disk_radius,
                        const SphereQuadrature& quad) {
  if (disk_radius <= 0.0) throw Error(ErrorKind::DimensionMismatch, "disk radius must be positive");
  const auto [p, m] = peak_points(gs.J, gs.B);
  const auto h = husimi_on(gs.state, ell, quad.thetas, quad.phis);
  double best = 0.0;
  for (std::size_t it = 0; it < quad.thetas.size(); ++it)
    for (std::size_t ip = 0; ip < quad.phis.size(); ++ip) {
      const SpherePoint x{quad.thetas[it], quad.phis[ip]};
      const double dp = std::acos(std::clamp(cos_angle(x, p), -1.0, 1.0));
      const double dm = std::acos(std::clamp(cos_angle(x, m), -1.0, 1.0));
      if (dp > disk_radius && dm > disk_radius) best = std::max(best, h.at(it, ip));
    }
  return best;
}

namespace {

// Half-maximum crossing between an inside sample `in` and an outside sample `out`.
double bisect_half(const std::function<double(double)>& f, double half, double in, double out) {
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (in + out);
    if (f(mid) >= half)
      in = mid;
    else
      out = mid;
  }
  return 0.5 * (in + out);
}

double golden_max(const std::function<double(double)>& f, double a, double b) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 100 && b - a > 1e-13; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

struct Width {
  double location, value, width;
};

Width scan_width(const std::function<double(double)>& f, double lo, double hi, int points) {
  std::vector<double> x(points), y(points);
  for (int i = 0; i < points; ++i) {
    x[i] = lo + (hi - lo) * i / (points - 1);
    y[i] = f(x[i]);
  }
  const int i0 = static_cast<int>(std::max_element(y.begin(), y.end()) - y.begin());
  if (i0 == 0 || i0 == points - 1)
    throw Error(ErrorKind::ScanError, "peak sits on the scan boundary");
  const double loc = golden_max(f, x[i0 - 1], x[i0 + 1]);
  const double top = std::max(f(loc), y[i0]);
  const double half = 0.5 * top;
  int l = i0, r = i0;
  while (l > 0 && y[l] >= half) --l;
  while (r < points - 1 && y[r] >= half) ++r;
  if (y[l] >= half || y[r] >= half) throw Error(ErrorKind::ScanError, "half maximum not reached inside the scan");
  const double left = bisect_half(f, half, x[l + 1], x[l]);
  const double right = bisect_half(f, half, x[r - 1], x[r]);
  return {loc, top, right - left};
}

}  // namespace

FwhmResult fwhm_scan(const GroundStateResult& gs, double ell, int points) {
  const int N = gs.N;
  const int minimum = static_cast<int>(std::ceil(4.0 * std::sqrt(static_cast<double>(N))));
  if (points <= 0) points = std::max(200, 2 * minimum);
  if (points < minimum) throw Error(ErrorKind::ScanError, "scan grid coarser than 4 sqrt(N) points");
  const SpherePoint plus = peak_points(gs.J, gs.B).first;

  FwhmResult out;
  const auto along_theta = scan_width(
      [&](double t) { return husimi_value(gs.state, ell, {t, 0.0}); }, 0.0, kPi / 2, points);
  const double theta0 = plus.theta;
  const auto along_phi = scan_width(
      [&](double p) { return husimi_value(gs.state, ell, {theta0, p}); }, -kPi, kPi, 2 * points + 1);
  out.width_theta = along_theta.width;
  out.width_phi = along_phi.width;
  out.peak = {along_theta.location, along_phi.location};
  out.peak_value = along_theta.value;
  return out;
}

SweepResult delta_family_rate(const std::function<double(const SpherePoint&)>& h,
                              const SpherePoint& center, double ell,
                              const std::vector<int>& n_list) {
  SweepResult out;
  out.label = "delta-family error";
  std::vector<double> xs, ys;
  for (int N : n_list) {
    const auto quad = build_quadrature(std::max(2 * N + 40, 100), std::max(2 * N + 40, 100));
    const auto kernel = peak_density(N, ell, center, quad);
    const auto nodes = quad.nodes();
    std::vector<double> v(nodes.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = h(nodes[i]) * kernel[i];
    const double err = std::abs(h(center) - ell * integrate(quad, v));
    out.points.emplace_back(N, err);
    xs.push_back(N);
    ys.push_back(err);
  }
  out.fit = loglog_fit(xs, ys);
  return out;
}

}  // namespace cwq
