#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace entropic {

/// Point in the plane. One-dimensional domains use only `x`.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::sqrt(norm2(a)); }

/// Convex polygon, vertices counterclockwise. `labels[k]` tags the edge
/// from vertex k to vertex k+1 with the constraint that produced it
/// (kBoundaryLabel for edges inherited from the domain).
struct Polygon {
  static constexpr int kBoundaryLabel = -1;

  std::vector<Point> vertices;
  std::vector<int> labels;

  Polygon() = default;
  explicit Polygon(std::vector<Point> v);
  Polygon(std::vector<Point> v, std::vector<int> l)
      : vertices(std::move(v)), labels(std::move(l)) {}

  bool empty() const { return vertices.size() < 3; }
  std::size_t size() const { return vertices.size(); }
};

double signed_area(std::span<const Point> v);
double area(const Polygon& p);
Point centroid(const Polygon& p);

/// Keeps {x : <normal, x> <= offset}. New edges carry `label`.
Polygon clip_halfplane(const Polygon& p, Point normal, double offset, int label);

/// Intersection with the axis-aligned box [lo, hi].
Polygon clip_box(const Polygon& p, Point lo, Point hi);

/// Point-in-convex-polygon with absolute slack `tol` (positive tol enlarges).
bool contains(const Polygon& p, Point q, double tol = 0.0);

/// Euclidean distance from q to the polygon boundary.
double boundary_distance(const Polygon& p, Point q);

/// Distance from q to segment [a, b].
double segment_distance(Point a, Point b, Point q);

}  // namespace entropic
