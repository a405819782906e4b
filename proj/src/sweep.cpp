#include "cwq/sweep.hpp"

#include <cmath>

namespace cwq {

std::vector<int> SweepResult::ns() const {
  std::vector<int> out;
  for (const auto& [n, v] : points) out.push_back(n);
  return out;
}

std::vector<double> SweepResult::values() const {
  std::vector<double> out;
  for (const auto& [n, v] : points) out.push_back(v);
  return out;
}

bool SweepResult::strictly_decreasing() const {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i].second < points[i - 1].second)) return false;
  return true;
}

bool SweepResult::non_increasing(double slack) const {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].second > points[i - 1].second + slack) return false;
  return true;
}

std::optional<LogLogFit> loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (y[i] == 0.0 || x[i] <= 0.0) continue;
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::nullopt;
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::nullopt;
  LogLogFit fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace cwq
