#pragma once

#include <functional>
#include <string>
#include <vector>

namespace cwq {

struct SubCheck {
  std::string name;
  bool pass = false;
  std::string detail;
  /// Cannot pass against the reference numbers; kept red on purpose.
  bool unattainable = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<SubCheck> checks;
  std::vector<std::string> info;
  double seconds = 0.0;

  bool pass() const;
  /// Every failing sub-check is a documented unattainable one.
  bool pass_or_documented() const;
};

struct AcceptanceOptions {
  bool quick = false;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// One PASS/FAIL line plus indented sub-check and info lines.
std::string format_result(const CriterionResult& r);

}  // namespace cwq
