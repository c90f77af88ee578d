#include "entropic/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "entropic/error.hpp"
#include "json.hpp"

namespace entropic {

namespace {

constexpr std::size_t kMinKs = 100;
constexpr std::size_t kMinMoment = 1000;

double pvalue(double d, double n_eff) {
  const double s = std::sqrt(n_eff);
  return kolmogorov_survival((s + 0.12 + 0.11 / s) * d);
}

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

TestReport ks_test(std::vector<double> samples, const std::function<double(double)>& cdf, double alpha) {
  const std::size_t n = samples.size();
  if (n < kMinKs) throw InputError("KS test needs at least 100 samples");
  std::sort(samples.begin(), samples.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (i + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  TestReport r;
  r.name = "ks";
  r.statistic = d;
  r.p_value = pvalue(d, static_cast<double>(n));
  r.threshold = alpha;
  r.pass = r.p_value >= alpha;
  r.sample_size = n;
  return r;
}

TestReport ks_test_two_sample(std::vector<double> a, std::vector<double> b, double alpha) {
  if (a.size() < kMinKs || b.size() < kMinKs) throw InputError("KS test needs at least 100 samples per side");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  TestReport r;
  r.name = "ks2";
  r.statistic = d;
  r.p_value = pvalue(d, na * nb / (na + nb));
  r.threshold = alpha;
  r.pass = r.p_value >= alpha;
  r.sample_size = a.size() + b.size();
  return r;
}

TestReport moment_check(const std::vector<double>& samples, double claimed_mean, double claimed_variance_bound,
                        double z_max) {
  const std::size_t n = samples.size();
  if (n < kMinMoment) throw InputError("moment check needs at least 1000 samples");
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  var /= static_cast<double>(n - 1);

  TestReport r;
  r.name = "moment";
  r.threshold = z_max;
  r.p_value = std::numeric_limits<double>::quiet_NaN();
  r.sample_size = n;
  const bool constant = std::all_of(samples.begin(), samples.end(), [&](double x) { return x == samples[0]; });
  if (constant) {
    mean = samples[0];
    var = 0.0;
    r.statistic = mean == claimed_mean ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    r.statistic = (mean - claimed_mean) / std::sqrt(var / static_cast<double>(n));
  }
  r.pass = std::abs(r.statistic) <= z_max && var <= claimed_variance_bound;
  std::ostringstream os;
  os.precision(17);
  os << "mean=" << mean << " variance=" << var;
  r.detail = os.str();
  return r;
}

std::string reports_to_json(const std::vector<TestReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  int passed = 0;
  for (const auto& r : reports) {
    arr.push_back({{"name", r.name},
                   {"statistic", number(r.statistic)},
                   {"threshold", number(r.threshold)},
                   {"p_value", number(r.p_value)},
                   {"pass", r.pass},
                   {"sample_size", r.sample_size},
                   {"seed", r.seed},
                   {"detail", r.detail}});
    passed += r.pass;
  }
  nlohmann::json out{{"reports", arr},
                     {"passed", passed},
                     {"failed", static_cast<int>(reports.size()) - passed}};
  return out.dump(2);
}

std::string reports_to_junit(const std::vector<TestReport>& reports, const std::string& suite) {
  int failures = 0;
  for (const auto& r : reports) failures += !r.pass;
  std::ostringstream os;
  os.precision(17);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<testsuite name=\"" << xml_escape(suite) << "\" tests=\"" << reports.size() << "\" failures=\""
     << failures << "\">\n";
  for (const auto& r : reports) {
    os << "  <testcase name=\"" << xml_escape(r.name) << "\">\n";
    os << "    <system-out>statistic=" << r.statistic << " threshold=" << r.threshold << " p=" << r.p_value
       << " n=" << r.sample_size << " seed=" << r.seed << "</system-out>\n";
    if (!r.pass) os << "    <failure message=\"" << xml_escape(r.detail) << "\"/>\n";
    os << "  </testcase>\n";
  }
  os << "</testsuite>\n";
  return os.str();
}

}  // namespace entropic
