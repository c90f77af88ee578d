#include "entropic/dirichlet.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "entropic/error.hpp"

namespace entropic {

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InputError("beta must be positive and finite");
}

template <class OnStick>
StickBreakingSample break_sticks(double beta, Rng& rng, const Truncation& truncation, OnStick on_stick) {
  check_beta(beta);
  if (truncation.max_terms < 1 || truncation.max_terms > Truncation::kMaxTerms) {
    throw ConfigError("max_terms must lie in [1, 1e6]");
  }
  StickBreakingSample s;
  s.beta = beta;
  double rest = 1.0;
  while (s.t.size() < truncation.max_terms) {
    const double e = std::log1p(-rng.uniform()) / beta;
    const double t = -std::expm1(e);
    s.t.push_back(t);
    s.lambda.push_back(t * rest);
    on_stick();
    rest *= std::exp(e);
    if (rest < truncation.remainder_below) break;
  }
  s.remainder = rest;
  return s;
}

}  // namespace

StickBreakingSample sample_stick_breaking(double beta, Rng& rng, const Truncation& truncation) {
  return break_sticks(beta, rng, truncation, [] {});
}

DirichletSample sample_dirichlet_ferguson(double beta, DomainPtr domain, Rng& rng, const Truncation& truncation) {
  std::vector<Point> atoms;
  StickBreakingSample s = break_sticks(beta, rng, truncation, [&] { atoms.push_back(domain->sample(rng)); });
  double total = 0.0;
  for (double l : s.lambda) total += l;
  std::vector<double> w(s.lambda.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = s.lambda[k] / total;
  Measure nu = Measure::discrete(domain, atoms, std::move(w));
  return DirichletSample{std::move(s), std::move(atoms), std::move(nu)};
}

double dirichlet_marginal_logdensity(const std::vector<double>& masses, double beta, const std::vector<double>& x) {
  check_beta(beta);
  if (masses.size() != x.size() || masses.empty()) throw InputError("masses and x differ in length");
  double sum_x = 0.0;
  double sum_a = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(beta * masses[i] > 0.0)) throw InputError("all parameters beta * m_i must be positive");
    if (!(x[i] >= 0.0)) throw InputError("x must lie in the simplex");
    sum_x += x[i];
    sum_a += beta * masses[i];
  }
  if (std::abs(sum_x - 1.0) > 1e-10) throw InputError("x must sum to 1");

  double v = log_gamma(sum_a);
  bool plus = false;
  bool minus = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = beta * masses[i];
    v -= log_gamma(a);
    if (x[i] == 0.0) {
      if (a < 1.0) plus = true;
      if (a > 1.0) minus = true;
      continue;
    }
    v += (a - 1.0) * std::log(x[i]);
  }
  if (plus && minus) return std::numeric_limits<double>::quiet_NaN();
  if (plus) return std::numeric_limits<double>::infinity();
  if (minus) return -std::numeric_limits<double>::infinity();
  return v;
}

std::vector<double> order_sizes(const StickBreakingSample& s) {
  std::vector<double> out = s.lambda;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double log_gamma(double x) { return std::lgamma(x); }

double sample_gamma(double shape, Rng& rng) {
  if (!(shape > 0.0)) throw InputError("gamma shape must be positive");
  std::gamma_distribution<double> g(shape, 1.0);
  return g(rng.engine());
}

double sample_beta(double a, double b, Rng& rng) {
  const double x = sample_gamma(a, rng);
  const double y = sample_gamma(b, rng);
  if (!(x + y > 0.0)) throw DegenerateError("both gamma draws vanished");
  return x / (x + y);
}

std::vector<double> sample_dirichlet(const std::vector<double>& alpha, Rng& rng) {
  std::vector<double> g(alpha.size());
  double total = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    g[i] = sample_gamma(alpha[i], rng);
    total += g[i];
  }
  if (!(total > 0.0)) throw DegenerateError("all gamma draws vanished");
  for (double& v : g) v /= total;
  return g;
}

double beta_cdf(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

}  // namespace entropic
