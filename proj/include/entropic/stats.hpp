#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace entropic {

struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  /// NaN when the check has no p-value.
  double p_value = 0.0;
  bool pass = false;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  std::string detail;
};

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

/// One-sample KS test; pass iff p >= alpha. Needs at least 100 samples.
TestReport ks_test(std::vector<double> samples, const std::function<double(double)>& cdf,
                   double alpha = 1e-3);
/// Two-sample KS test with the effective size n m / (n + m).
TestReport ks_test_two_sample(std::vector<double> a, std::vector<double> b, double alpha = 1e-3);

/// z = (mean - claimed_mean) / sqrt(var / n) with the sample variance; pass
/// iff |z| <= z_max and the sample variance is at most claimed_variance_bound.
/// Constant samples give z = 0 when they equal the claim and fail otherwise.
/// Needs at least 1000 samples.
TestReport moment_check(const std::vector<double>& samples, double claimed_mean,
                        double claimed_variance_bound, double z_max = 5.0);

/// {"reports": [...], "passed": n, "failed": n}; non-finite numbers become null.
std::string reports_to_json(const std::vector<TestReport>& reports);
/// JUnit-style XML, one testcase per report.
std::string reports_to_junit(const std::vector<TestReport>& reports, const std::string& suite);

}  // namespace entropic
