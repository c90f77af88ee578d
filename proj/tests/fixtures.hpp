#pragma once

#include <cmath>
#include <vector>

#include "entropic/domain.hpp"
#include "entropic/measures.hpp"
#include "entropic/rng.hpp"

namespace fx {

using namespace entropic;

inline DomainPtr interval() { return make_domain(Domain::interval()); }
inline DomainPtr circle() { return make_domain(Domain::circle()); }
inline DomainPtr square() { return make_domain(Domain::unit_square()); }

inline Measure atoms1d(DomainPtr d, std::vector<double> xs, std::vector<double> ws) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back({x, 0.0});
  return Measure::discrete(std::move(d), std::move(pts), std::move(ws));
}

/// Random point on the simplex with entries bounded below by `floor`.
inline std::vector<double> simplex(Rng& rng, std::size_t n, double floor = 0.0) {
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& v : w) {
    v = -std::log(rng.uniform());
    s += v;
  }
  const double rest = 1.0 - floor * static_cast<double>(n);
  for (auto& v : w) v = floor + rest * v / s;
  return w;
}

/// Random nondecreasing Lipschitz-`lip` sequence drift used as potential generator.
inline std::vector<double> random_walk(Rng& rng, const std::vector<Point>& nodes, double lip, double h) {
  std::vector<double> v(nodes.size());
  double cur = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = cur;
    cur += (2.0 * rng.uniform() - 1.0) * lip * h;
  }
  return v;
}

}  // namespace fx
