#pragma once

#include <cstddef>
#include <vector>

#include "entropic/domain.hpp"
#include "entropic/measures.hpp"
#include "entropic/rng.hpp"

namespace entropic {

/// Stick-breaking stops at the first k with remainder < remainder_below, or
/// after max_terms sticks, whichever comes first.
struct Truncation {
  double remainder_below = 1e-10;
  std::size_t max_terms = kMaxTerms;

  static constexpr std::size_t kMaxTerms = 1000000;
  static Truncation terms(std::size_t k) { return {0.0, k}; }
};

struct StickBreakingSample {
  double beta = 1.0;
  std::vector<double> t;
  std::vector<double> lambda;
  /// prod_k (1 - t_k).
  double remainder = 1.0;
};

/// Sticks t ~ Beta(1, beta) by inversion, t = 1 - (1 - u)^(1/beta).
StickBreakingSample sample_stick_breaking(double beta, Rng& rng, const Truncation& truncation = {});

struct DirichletSample {
  StickBreakingSample sticks;
  /// x_k ~ m, one per stick.
  std::vector<Point> atoms;
  /// sum_k lambda_k delta_{x_k}, weights divided by 1 - remainder.
  Measure nu;
};

/// One draw from the Dirichlet-Ferguson process with intensity beta m.
/// Each stick consumes one uniform for t_k followed by the draw of x_k.
DirichletSample sample_dirichlet_ferguson(double beta, DomainPtr domain, Rng& rng,
                                          const Truncation& truncation = {});

/// log density of Dirichlet(beta m_1, ..., beta m_N) at x on the simplex.
/// On the boundary returns +inf or -inf when every vanishing coordinate
/// pushes the same way, and NaN when they disagree.
double dirichlet_marginal_logdensity(const std::vector<double>& masses, double beta, const std::vector<double>& x);

/// Stick weights in nonincreasing order.
std::vector<double> order_sizes(const StickBreakingSample& s);

double log_gamma(double x);
/// Gamma(shape, 1) via the standard library's rejection sampler.
double sample_gamma(double shape, Rng& rng);
double sample_beta(double a, double b, Rng& rng);
std::vector<double> sample_dirichlet(const std::vector<double>& alpha, Rng& rng);
/// Regularized incomplete beta function I_x(a, b).
double beta_cdf(double x, double a, double b);

}  // namespace entropic
