#include <cmath>

#include "doctest.h"
#include "entropic/dirichlet.hpp"
#include "entropic/error.hpp"
#include "entropic/stats.hpp"
#include "json.hpp"

using namespace entropic;

TEST_CASE("KS calibration and power") {
  Rng rng(42);
  std::vector<double> good;
  for (int k = 0; k < 5000; ++k) good.push_back(sample_beta(0.6, 1.4, rng));
  const auto ok = ks_test(good, [](double x) { return beta_cdf(x, 0.6, 1.4); });
  CHECK(ok.pass);
  CHECK(ok.p_value >= 1e-3);

  std::vector<double> other;
  for (int k = 0; k < 5000; ++k) other.push_back(sample_beta(2.0, 2.0, rng));
  const auto bad = ks_test(other, [](double x) { return beta_cdf(x, 0.6, 1.4); });
  CHECK(bad.p_value < 1e-6);

  CHECK_THROWS_AS(ks_test(std::vector<double>(50, 0.5), [](double x) { return x; }), InputError);

  const auto same = ks_test_two_sample(good, std::vector<double>(good.begin(), good.begin() + 2500));
  CHECK(same.pass);
  CHECK_FALSE(ks_test_two_sample(good, other).pass);
}

TEST_CASE("Kolmogorov survival function") {
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(kolmogorov_survival(1.9495) == doctest::Approx(0.001).epsilon(1e-2));
}

TEST_CASE("moment checks") {
  Rng rng(1);
  std::vector<double> l1;
  for (int k = 0; k < 10000; ++k) l1.push_back(sample_stick_breaking(1.0, rng, Truncation::terms(1)).lambda[0]);
  CHECK(moment_check(l1, 0.5, 0.25).pass);
  const auto flat = moment_check(std::vector<double>(2000, 0.3), 0.3, 1.0);
  CHECK(flat.pass);
  CHECK(flat.statistic == 0.0);
  CHECK_FALSE(moment_check(std::vector<double>(2000, 0.31), 0.3, 1.0).pass);
  CHECK_THROWS_AS(moment_check(std::vector<double>(10, 0.3), 0.3, 1.0), InputError);
}

TEST_CASE("report emission") {
  TestReport a{"alpha", 0.1, 0.5, 0.9, true, 100, 7, ""};
  TestReport b{"beta<&>", std::numeric_limits<double>::infinity(), 5.0, NAN, false, 1000, 8, "bad"};
  const auto j = nlohmann::json::parse(reports_to_json({a, b}));
  CHECK(j["passed"] == 1);
  CHECK(j["failed"] == 1);
  CHECK(j["reports"][1]["statistic"].is_null());
  const std::string xml = reports_to_junit({a, b}, "suite");
  CHECK(xml.find("failures=\"1\"") != std::string::npos);
  CHECK(xml.find("beta&lt;&amp;&gt;") != std::string::npos);
}
