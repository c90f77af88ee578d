#pragma once

#include <vector>

#include "entropic/conjugation.hpp"
#include "entropic/domain.hpp"

namespace entropic {

/// Laguerre tessellation of a convex polygon:
///   A_i = M ∩ {x : <z_i, x> + alpha_i >= <z_j, x> + alpha_j for all j}.
/// Cell edges carry the index j of the neighbouring site, or
/// Polygon::kBoundaryLabel on the domain boundary.
struct Tessellation {
  DomainPtr domain;
  std::vector<Point> sites;
  /// Affine offsets, gauge alpha_0 = 0 after solving.
  std::vector<double> alpha;
  std::vector<Polygon> cells;
  std::vector<double> masses;
  int iterations = 0;
  double residual = 0.0;

  std::size_t size() const { return sites.size(); }
  /// Power-diagram weights 2 alpha_i + |z_i|^2, shifted so that the first is 0.
  /// A tessellation is a plain Voronoi diagram iff these all vanish.
  std::vector<double> power_weights() const;
  /// Index maximizing <z_i, x> + alpha_i (lowest on ties).
  std::size_t cell_of(Point x) const;
  /// phi_1(x) = max_i <z_i, x> + alpha_i.
  double potential(Point x) const;
  Potential potential_on(GridPtr grid) const;
  /// Distinct vertices of all cells.
  std::vector<Point> vertices() const;
  /// Distance from x to the edge skeleton (cell edges and the domain boundary).
  double skeleton_distance(Point x) const;
};

/// Affine offsets alpha_i = (w_i - |z_i|^2) / 2 for power weights w_i;
/// zero weights give the Voronoi diagram of the sites.
std::vector<double> alpha_from_power_weights(const std::vector<Point>& sites, const std::vector<double>& w);

/// Cells and masses for given offsets. Empty cells are allowed.
Tessellation laguerre_cells(DomainPtr domain, std::vector<Point> sites, std::vector<double> alpha);

struct SolverOptions {
  /// Stop when max_i |m(A_i) - lambda_i| <= tol.
  double tol = 1e-9;
  int max_iterations = 100;
  /// Iteration cap of the gradient-ascent fallback.
  int fallback_iterations = 20000;
};

/// Offsets alpha with m(A_i) = lambda_i, by damped Newton on the concave dual
/// with a gradient-ascent fallback. Throws SolverError with the last residual
/// when the tolerance is not reached.
Tessellation semidiscrete_weights(DomainPtr domain, std::vector<Point> sites,
                                  std::vector<double> lambda, const SolverOptions& options = {});

/// max_i |m(A_i) - lambda_i|.
double mass_residual(const Tessellation& t, const std::vector<double>& lambda);

}  // namespace entropic
