#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "cwq/dicke.hpp"
#include "cwq/sweep.hpp"

namespace cwq {

struct SpherePoint {
  double theta = 0.0;  ///< [0, pi]
  double phi = 0.0;    ///< (-pi, pi]
};

/// Product rule on S^2: theta nodes with weights that already carry the
/// sin(theta) Jacobian, times phi nodes. Weights are in steradians.
struct SphereQuadrature {
  std::vector<double> thetas, theta_weights;
  std::vector<double> phis, phi_weights;
  int exactness = -1;  ///< spherical degree integrated exactly, -1 if none is guaranteed

  std::size_t size() const { return thetas.size() * phis.size(); }
  std::vector<SpherePoint> nodes() const;
  /// Row-major over (theta, phi), matching nodes().
  std::vector<double> weights() const;
  double total_weight() const;
};

/// Gauss-Legendre in cos(theta) x uniform periodic trapezoid in phi.
/// Exactness min(2 n_theta - 1, n_phi - 1).
SphereQuadrature build_quadrature(int n_theta, int n_phi);

/// Default matched rule for degree-N integrands: n_theta = N+2, n_phi = 2N+4.
SphereQuadrature matched_quadrature(int N);

/// Uniform grid behind the reference tables: theta_j = j pi/N (j = 0..N,
/// trapezoid), phi_l = -pi + 2 pi l/N (l = 0..N-1). Its weights sum to 4pi only
/// approximately.
SphereQuadrature tabulation_grid(int N);

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// c(k) = sqrt(C(N,k)) cos(theta/2)^k sin(theta/2)^(N-k) e^{i(N-k)phi}.
DickeVector coherent_components(int N, const SpherePoint& p);

/// |<Omega_p, Omega_q>_N|^2 = ((1 + cos Phi)/2)^N.
double overlap_squared(const SpherePoint& p, const SpherePoint& q, int N);

/// cos of the angle between two sphere points.
double cos_angle(const SpherePoint& p, const SpherePoint& q);

/// (N+1)/(4 pi) |<Psi, Omega>|^(2 ell) at one point.
double husimi_value(const DickeVector& psi, double ell, const SpherePoint& p);

struct HusimiProfile {
  int N = 0;
  double ell = 1.0;
  std::vector<double> thetas, phis;
  std::vector<double> values;  ///< row-major (theta, phi)

  double at(std::size_t it, std::size_t ip) const { return values[it * phis.size() + ip]; }
};

/// theta_j = j pi/(n_theta-1), phi_l = -pi + 2 pi (l + 1/2)/n_phi.
HusimiProfile husimi_profile(const DickeVector& psi, double ell, int n_theta, int n_phi);
HusimiProfile husimi_on(const DickeVector& psi, double ell, const std::vector<double>& thetas,
                        const std::vector<double>& phis);

struct ResolutionCheck {
  double residual = 0.0;
  bool under_resolved = false;
};

/// max over random Psi, Phi of |(N+1)/(4pi) sum w <Psi,Omega><Omega,Phi> - <Psi,Phi>|.
ResolutionCheck resolution_identity_check(int N, const SphereQuadrature& quad, int trials = 3,
                                          std::uint64_t seed = 7);

/// (ell(N+1)/4pi) sum w |<Omega', Omega>|^(2 ell), exactly ell(N+1)/(ell N+1).
double overlap_integral(int N, double ell, const SpherePoint& center, const SphereQuadrature& quad);

/// Peak points Omega_+- = (arccos(+-z*), 0) of the classical minima.
std::pair<SpherePoint, SpherePoint> peak_points(double J, double B);

enum class TableRule { Tabulation, Exact };

struct TableIntegral {
  double value = 0.0;
  bool under_resolved = false;
};

struct Table3Integral {
  double a = 0.0;  ///< Psi term
  double b = 0.0;  ///< Omega+- term
  bool under_resolved = false;
};

SphereQuadrature table_quadrature(int N, TableRule rule);

/// int (H_Psi - H_+/2 - H_-/2) dOmega with ell = 1.
TableIntegral table1_integral(const GroundStateResult& gs, TableRule rule = TableRule::Tabulation);
/// int |H_Psi - 2^-ell (H_+ + H_-)| dOmega.
TableIntegral table2_integral(const GroundStateResult& gs, double ell,
                              TableRule rule = TableRule::Tabulation);
/// Separate integrals of H_Psi and 2^-ell (H_+ + H_-).
Table3Integral table3_integrals(const GroundStateResult& gs, double ell,
                                TableRule rule = TableRule::Tabulation);

/// Max Husimi density over nodes farther than `disk_radius` from both peaks.
double assumption_c_sup(const GroundStateResult& gs, double ell, double disk_radius,
                        const SphereQuadrature& quad);

struct FwhmResult {
  double width_theta = 0.0;
  double width_phi = 0.0;
  SpherePoint peak;
  double peak_value = 0.0;
};

/// Half-maximum widths along theta (phi = 0, theta in [0, pi/2]) and along phi
/// (theta at the peak). Throws ScanError with fewer than 4 sqrt(N) points.
FwhmResult fwhm_scan(const GroundStateResult& gs, double ell, int points = 0);

/// Errors |h(p') - (ell(N+1)/4pi) int h |<Omega',Omega>|^(2ell)| per N plus a log-log fit.
SweepResult delta_family_rate(const std::function<double(const SpherePoint&)>& h,
                              const SpherePoint& center, double ell,
                              const std::vector<int>& n_list);

}  // namespace cwq
