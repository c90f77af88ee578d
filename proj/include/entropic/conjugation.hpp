#pragma once

#include <cstddef>
#include <vector>

#include "entropic/domain.hpp"

namespace entropic {

/// Function sampled at the nodes of a grid.
struct Potential {
  GridPtr grid;
  std::vector<double> values;
  bool c_convex_verified = false;

  /// Checks that the values are finite and match the grid size.
  static Potential make(GridPtr grid, std::vector<double> values);
  static Potential constant(GridPtr grid, double value);
  std::size_t size() const { return values.size(); }
};

/// Potential whose quadrature mean against m vanishes.
struct PotentialClass {
  Potential representative;
};

/// Sup-norm bound 2 D eps on the error of the grid c-transform.
double discretization_floor(const Grid& grid);

struct CTransform {
  Potential value;
  /// Minimizing node for each output node (lowest index on ties).
  std::vector<std::size_t> argmin;
};

/// phi^c(x_j) = -min_i [d(x_j, y_i)^2 / 2 + phi(y_i)] over the grid nodes.
/// On the interval this uses the O(n) envelope sweep; elsewhere the direct scan.
CTransform c_transform_full(const Potential& phi);
Potential c_transform(const Potential& phi);
/// Direct O(n^2) scan on any domain; the reference for the fast path.
CTransform c_transform_brute(const Potential& phi);
/// Envelope sweep for the interval.
CTransform c_transform_interval(const Potential& phi);

/// Throws ConfigError when tol < 4 D eps.
bool is_c_convex(const Potential& phi, double tol);
/// Convenience: ||C(C(phi)) - phi||_inf.
double involution_residual(const Potential& phi);

PotentialClass normalize_class(const Potential& phi);

struct LegendreResult {
  Potential value;
  std::vector<std::size_t> argmax;
};

/// psi(y_j) = max_i [<x_i, y_j> - phi(x_i)] over grid nodes, with the argmax.
/// Euclidean domains only.
LegendreResult legendre_fenchel(const Potential& phi);

/// phi + sign |x|^2 / 2 nodewise. Euclidean domains only.
Potential shift_quadratic(const Potential& phi, int sign);

/// Largest ratio |phi(x) - phi(y)| / d(x, y) over adjacent 1D node pairs, or
/// over all pairs of a deterministic subsample of at most `max_nodes` nodes in 2D.
double lipschitz_ratio(const Potential& phi, std::size_t max_nodes = 256);

}  // namespace entropic
