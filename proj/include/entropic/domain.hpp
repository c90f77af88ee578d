#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "entropic/geometry.hpp"
#include "entropic/rng.hpp"

namespace entropic {

enum class DomainKind { kInterval, kCircle, kPolygon };

/// Absolute tolerance for domain membership.
inline constexpr double kMembershipTol = 1e-12;

/// Compact domain together with its reference probability measure m.
///
/// m has a piecewise-constant density sigma with respect to length (1D) or
/// area (2D). In 1D sigma is given on `nx` equal cells of [0, 1]; in 2D on an
/// nx-by-ny lattice over the bounding box of the polygon (row-major, x
/// fastest). Values are normalized on construction so that m(M) = 1.
/// The circle of length 1 uses coordinates in [0, 1) with base point 0.
class Domain {
 public:
  static Domain interval();
  static Domain circle();
  /// Convex polygon with positive area; clockwise input is reoriented.
  static Domain polygon(std::vector<Point> vertices);
  static Domain unit_square();

  Domain with_density(std::vector<double> values, int nx, int ny = 1) const;

  DomainKind kind() const { return kind_; }
  int dimension() const { return kind_ == DomainKind::kPolygon ? 2 : 1; }
  bool is_one_dimensional() const { return dimension() == 1; }
  bool is_euclidean() const { return kind_ != DomainKind::kCircle; }

  const Polygon& polygon() const { return polygon_; }
  Point bbox_lo() const { return lo_; }
  Point bbox_hi() const { return hi_; }
  /// Length (1D) or area (2D).
  double volume() const { return volume_; }

  bool uniform() const { return sigma_.empty(); }
  const std::vector<double>& density_values() const { return sigma_; }
  int density_nx() const { return nx_; }
  int density_ny() const { return ny_; }
  /// sigma > 0 on every density cell that meets the domain.
  bool has_full_support() const { return full_support_; }

  bool contains(Point p, double tol = kMembershipTol) const;
  /// Throws DomainError when p is outside.
  void require_contains(Point p) const;
  /// Maps circle coordinates into [0, 1); identity elsewhere.
  Point canonical(Point p) const;

  /// dm/dvol at p.
  double sigma(Point p) const;

  // One-dimensional reference measure.
  double cdf(double x) const;
  /// Right inverse of cdf: inf{x : cdf(x) >= u}.
  double quantile(double u) const;
  /// m([a, b]) for 0 <= a <= b <= 1.
  double mass(double a, double b) const;
  /// Breakpoints of cdf in (0, 1).
  std::vector<double> cdf_knots() const;

  // Two-dimensional reference measure.
  struct MassMoment {
    double mass = 0.0;
    Point moment{};  // integral of x dm
  };
  double mass(const Polygon& region) const;
  MassMoment mass_moment(const Polygon& region) const;
  /// Integral of sigma along the segment [a, b] (arc-length measure).
  double line_integral(Point a, Point b) const;

  /// Draws one point distributed according to m.
  Point sample(Rng& rng) const;

  friend bool operator==(const Domain& a, const Domain& b);

 private:
  struct Piece {
    Polygon region;
    double cumulative = 0.0;
  };

  void finalize();
  std::size_t lattice_index(Point p) const;

  DomainKind kind_ = DomainKind::kInterval;
  Polygon polygon_;
  Point lo_{0.0, 0.0};
  Point hi_{1.0, 0.0};
  double volume_ = 1.0;
  std::vector<double> sigma_;  // empty means uniform
  int nx_ = 0;
  int ny_ = 0;
  bool full_support_ = true;
  std::vector<double> cumulative_;  // 1D cdf at cell boundaries
  std::vector<Piece> pieces_;       // 2D sampling pieces
};

using DomainPtr = std::shared_ptr<const Domain>;

inline DomainPtr make_domain(Domain d) { return std::make_shared<const Domain>(std::move(d)); }

/// Metric of the domain: arc length on the circle, Euclidean otherwise.
double distance(const Domain& domain, Point x, Point y);
/// Same as distance() without the membership check, for inner loops.
double raw_distance(DomainKind kind, Point x, Point y);

/// Largest distance between two points of the domain.
double diameter(const Domain& domain);

/// Discretization of a domain: the epsilon-covering used by the c-transform.
///
/// 1D nodes are equally spaced (interval: endpoints included; circle:
/// periodic). 2D nodes are centroids of the lattice squares clipped to the
/// polygon, so every node lies inside and the cell areas tile the polygon.
struct Grid {
  DomainPtr domain;
  int resolution = 0;
  double spacing = 0.0;
  /// Every domain point is within eps of some node.
  double eps = 0.0;
  std::vector<Point> nodes;
  /// Length or area of the cell owned by each node.
  std::vector<double> volumes;
  /// 2D cells, parallel to nodes.
  std::vector<Polygon> cells;

  Point origin{};
  int nx = 0;
  int ny = 0;
  std::vector<int> lattice_to_node;

  std::size_t size() const { return nodes.size(); }
  /// Node whose cell contains p.
  std::optional<std::size_t> locate(Point p) const;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(DomainPtr domain, int resolution);

/// Quadrature weights of m on the grid: the m-mass of each node's cell,
/// normalized to sum to one.
std::vector<double> reference_weights(const Grid& grid);
std::vector<double> reference_weights(const Domain& domain, const Grid& grid);

}  // namespace entropic
