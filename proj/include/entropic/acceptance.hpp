#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entropic/stats.hpp"

namespace entropic {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Worst observed value of the checked quantity and its bound.
  double statistic = 0.0;
  double threshold = 0.0;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20260101;
  /// Flips the sign of the reference in the involution and fixture checks;
  /// a working build must then fail.
  bool canary = false;
};

inline constexpr int kCriteria = 11;

std::string criterion_name(int id);
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});
/// Runs the selected criteria (all when empty) in increasing order.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {}, const AcceptanceOptions& options = {});

/// One line per criterion: "PASS  1 involution_bound ...".
std::string format_result(const CriterionResult& r);
TestReport to_report(const CriterionResult& r, std::uint64_t seed);

}  // namespace entropic
