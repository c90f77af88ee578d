#pragma once

#include <vector>

#include "entropic/line_measure.hpp"
#include "entropic/measures.hpp"
#include "entropic/transport.hpp"

namespace entropic {

struct EntropyValue {
  double value = 0.0;
  bool finite = true;

  static EntropyValue infinite();
};

/// Ent(mu | m) = integral of eta log eta dm. Grid densities use the reference
/// weights as quadrature; piecewise measures without atoms are integrated
/// exactly. Anything with atoms is +infinity.
EntropyValue relative_entropy(const Measure& mu);

/// Ent(m | nu) = integral of -log rho dm, +infinity when rho vanishes on a set
/// of positive m-mass.
EntropyValue reverse_entropy(const Measure& nu);

/// |Ent(mu^c | m) - Ent(m | mu)| for a 1D grid density bounded below by 1e-12.
double entropy_duality_gap(const Measure& mu);

/// L2 Wasserstein distance on the interval or circle, exact for atoms and
/// uniform slabs. The circle minimizes over the lift offset.
double wasserstein_1d(const Measure& mu, const Measure& nu);

/// sqrt of integral d(g_1, g_2)^2 dm: an upper bound for the distance between
/// the pushforwards. Two Laguerre maps are integrated exactly over cell
/// intersections; otherwise the grid's reference weights are the quadrature.
double wasserstein_2d_upper(const TransportMap& g1, const TransportMap& g2, const GridPtr& grid);

/// Exact integrals over [0, 1] of (g1 - g2)^2 and |g1 - g2|.
double l2_distance_sq(const MonotoneFunction& g1, const MonotoneFunction& g2);
double l1_distance(const MonotoneFunction& g1, const MonotoneFunction& g2);

/// d_W(mu_n^c, limit^c) for each element of the sequence.
std::vector<double> conjugation_continuity_probe(const std::vector<Measure>& sequence, const Measure& limit);

/// Minimal mean squared distance over bijections between two equal-size
/// point clouds (at most 512 points each).
double assignment_cost(const std::vector<Point>& a, const std::vector<Point>& b);
/// sqrt(assignment_cost): d_W between the two uniform clouds.
double wasserstein_empirical_2d(const std::vector<Point>& a, const std::vector<Point>& b);

}  // namespace entropic
