#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "entropic/domain.hpp"
#include "entropic/line_measure.hpp"

namespace entropic {

struct DiscreteMeasure {
  std::vector<Point> atoms;
  std::vector<double> weights;
};

/// Density eta = dmu/dm sampled at the nodes of a grid.
struct GridDensity {
  GridPtr grid;
  std::vector<double> density;
};

/// Equal-weight sample cloud; the finite stand-in for singular measures.
struct EmpiricalMeasure {
  std::vector<Point> points;
};

/// Probability measure on a domain.
class Measure {
 public:
  using Repr = std::variant<DiscreteMeasure, GridDensity, EmpiricalMeasure, LineMeasure>;

  /// Atoms must lie in the domain; atoms closer than 1e-12 are merged.
  static Measure discrete(DomainPtr domain, std::vector<Point> atoms, std::vector<double> weights);
  /// Values below 1e-300 are set to zero. With `normalize` the values are
  /// rescaled so that their quadrature against m is one; otherwise that sum
  /// must already be one within 1e-10.
  static Measure grid_density(GridPtr grid, std::vector<double> eta, bool normalize = true);
  static Measure empirical(DomainPtr domain, std::vector<Point> points);
  /// Atoms and uniform slabs on a 1D domain.
  static Measure piecewise(DomainPtr domain, LineMeasure line);
  /// The reference measure m itself (1D: exact; 2D: unit density on a grid).
  static Measure reference(DomainPtr domain);

  const Domain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  const Repr& repr() const { return repr_; }

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&repr_);
  }
  std::string type_name() const;

 private:
  Measure(DomainPtr d, Repr r) : domain_(std::move(d)), repr_(std::move(r)) {}

  DomainPtr domain_;
  Repr repr_;
};

/// Exact 1D representation of a measure on the interval or circle. Grid
/// densities become slabs carrying the trapezoid m-mass of each grid cell.
LineMeasure to_line_measure(const Measure& mu);

/// Measurable partition of the domain into N blocks.
class Partition {
 public:
  using Interval = std::pair<double, double>;

  /// 1D blocks given as unions of half-open intervals [a, b). On the circle an
  /// interval with a > b wraps through the base point. The block containing 1
  /// on the interval is closed at 1.
  static Partition intervals(DomainPtr domain, std::vector<std::vector<Interval>> blocks);
  /// 1D blocks [0, c1), [c1, c2), ..., [ck, 1].
  static Partition from_cuts(DomainPtr domain, const std::vector<double>& cuts);
  /// Blocks as labels over the cells of a grid.
  static Partition grid_labels(GridPtr grid, std::vector<int> labels, int blocks);

  std::size_t size() const { return masses_.size(); }
  /// m(M_i).
  const std::vector<double>& masses() const { return masses_; }
  const Domain& domain() const { return *domain_; }
  const std::vector<std::vector<Interval>>& blocks() const { return blocks_; }
  const GridPtr& grid() const { return grid_; }
  const std::vector<int>& labels() const { return labels_; }

  /// Block containing p.
  std::size_t block_of(Point p) const;

 private:
  Partition() = default;

  DomainPtr domain_;
  std::vector<std::vector<Interval>> blocks_;
  GridPtr grid_;
  std::vector<int> labels_;
  std::vector<double> masses_;
};

/// (mu(M_1), ..., mu(M_N)).
std::vector<double> coarse_grain(const Measure& mu, const Partition& partition);

/// Minimum of Ent(m | nu) over nu with nu(M_i) = x_i, attained by the
/// piecewise-constant density x_i / m(M_i). +infinity when some x_i = 0 on a
/// block of positive mass.
double min_entropy_given_marginals(const Partition& partition, const std::vector<double>& x);

}  // namespace entropic
