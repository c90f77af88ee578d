#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "entropic/conjugation.hpp"
#include "entropic/laguerre.hpp"
#include "entropic/line_measure.hpp"
#include "entropic/measures.hpp"

namespace entropic {

/// Monotone map sampled at 1D grid nodes.
struct Grid1DMap {
  GridPtr grid;
  std::vector<double> values;
};

/// Every point of cell A_i goes to site z_i.
struct LaguerreAssign {
  std::shared_ptr<const Tessellation> tessellation;
};

/// Per-node target points, e.g. from a Legendre-Fenchel argmax.
struct GridArgmaxMap {
  GridPtr grid;
  std::vector<Point> targets;
};

using TransportMap = std::variant<Grid1DMap, LaguerreAssign, GridArgmaxMap>;

/// Image of x. Grid maps use the node whose cell contains x.
Point apply(const TransportMap& g, Point x);

/// g_* m as a discrete measure: each grid node (or Laguerre cell) carries its
/// reference mass to its image.
Measure pushforward(const TransportMap& g);

/// x -> mu([0, x]).
MonotoneFunction cdf_1d(const Measure& mu);
/// y -> inf{x : f(x) >= y}.
MonotoneFunction right_inverse_1d(const MonotoneFunction& f);

/// g_* m for a monotone g on the interval with uniform m: its distribution
/// function is the right inverse of g.
Measure pushforward_1d(const MonotoneFunction& g, DomainPtr domain);
/// Conjugate map g^c = g^(-1) on the interval with uniform m.
MonotoneFunction conjugate_map_1d(const MonotoneFunction& g);

/// Exact conjugate measure on the interval (any fully supported m) or the
/// circle (uniform m). On the circle the inverse distribution function is
/// taken with respect to the optimal rotation, which places the lift at the
/// mean of mu minus one half. Purely atomic results come back as discrete
/// measures, everything else as piecewise measures.
Measure conjugate_measure_1d(const Measure& mu);

/// Rotation s with mu^c = (F_mu)_* m shifted by s on the circle.
double circle_rotation(const Measure& mu);

/// Monotone map g with g_* m = mu, evaluated exactly at the grid nodes.
Grid1DMap brenier_map_1d(const Measure& mu, GridPtr grid);

struct DiscreteBrenier {
  LaguerreAssign map;
  /// phi_1 is the tessellation's piecewise-affine potential.
  std::shared_ptr<const Tessellation> tessellation;
};

/// Brenier map onto a discrete measure on a polygon.
DiscreteBrenier brenier_map_discrete(const Measure& mu, const SolverOptions& options = {});

/// f(y) = argmax_x <x, y> - phi_1(x). The objective is concave and affine on
/// every cell, so the maximum is attained at a cell vertex; the search runs
/// over all vertices of the tessellation.
class ConjugateMap {
 public:
  explicit ConjugateMap(std::shared_ptr<const Tessellation> t);
  Point operator()(Point y) const;
  const std::vector<Point>& vertices() const { return vertices_; }

 private:
  std::shared_ptr<const Tessellation> tessellation_;
  std::vector<Point> vertices_;
  std::vector<double> phi_;
};

/// Empirical approximation of mu^c from n_samples draws y ~ m mapped by f.
Measure conjugate_measure_2d(const Tessellation& t, std::size_t n_samples, Rng& rng);
Measure conjugate_measure_2d(const Measure& mu, std::size_t n_samples, Rng& rng,
                             const SolverOptions& options = {});

/// max over interior nodes of |eta(x) rho(f(x)) - 1| and |rho(x) eta(g(x)) - 1|,
/// where rho is the density of mu^c. Throws PreconditionError if eta
/// comes within 1e-12 of zero.
double density_reciprocity_check(const Measure& mu);

}  // namespace entropic
