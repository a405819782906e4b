#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cwq {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Labelled (N, value) series with an optional log-log least-squares fit.
struct SweepResult {
  std::string label;
  std::vector<std::pair<int, double>> points;
  std::optional<LogLogFit> fit;

  std::vector<int> ns() const;
  std::vector<double> values() const;
  bool strictly_decreasing() const;
  bool non_increasing(double slack = 0.0) const;
};

/// Least squares of log|y| against log x. Points with y == 0 are skipped;
/// returns nullopt with fewer than two usable points.
std::optional<LogLogFit> loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cwq
