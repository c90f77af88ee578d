#include "entropic/geometry.hpp"

#include <algorithm>
#include <limits>

namespace entropic {

Polygon::Polygon(std::vector<Point> v)
    : vertices(std::move(v)), labels(vertices.size(), kBoundaryLabel) {}

double signed_area(std::span<const Point> v) {
  const std::size_t n = v.size();
  if (n < 3) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    s += cross(v[k], v[(k + 1) % n]);
  }
  return 0.5 * s;
}

double area(const Polygon& p) { return std::abs(signed_area(p.vertices)); }

Point centroid(const Polygon& p) {
  const auto& v = p.vertices;
  const std::size_t n = v.size();
  if (n == 0) return {};
  // Shift to the first vertex to limit cancellation on small cells.
  const Point o = v[0];
  double a = 0.0;
  Point c{};
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const Point p1 = v[k] - o;
    const Point p2 = v[k + 1] - o;
    const double t = cross(p1, p2);
    a += t;
    c = c + (t / 3.0) * (p1 + p2);
  }
  if (a == 0.0) {
    Point s{};
    for (const auto& q : v) s = s + q;
    return (1.0 / static_cast<double>(n)) * s;
  }
  return o + (1.0 / a) * c;
}

Polygon clip_halfplane(const Polygon& p, Point normal, double offset, int label) {
  const std::size_t n = p.vertices.size();
  Polygon out;
  if (n == 0) return out;
  out.vertices.reserve(n + 1);
  out.labels.reserve(n + 1);

  bool all_inside = true;
  for (const auto& v : p.vertices) {
    if (dot(normal, v) - offset > 0.0) {
      all_inside = false;
      break;
    }
  }
  if (all_inside) return p;

  for (std::size_t k = 0; k < n; ++k) {
    const Point a = p.vertices[k];
    const Point b = p.vertices[(k + 1) % n];
    const int edge = p.labels[k];
    const double da = dot(normal, a) - offset;
    const double db = dot(normal, b) - offset;
    if (da <= 0.0) {
      out.vertices.push_back(a);
      out.labels.push_back(edge);
      if (db > 0.0) {
        const double t = da / (da - db);
        out.vertices.push_back(a + t * (b - a));
        out.labels.push_back(label);
      }
    } else if (db <= 0.0) {
      const double t = da / (da - db);
      out.vertices.push_back(a + t * (b - a));
      out.labels.push_back(edge);
    }
  }

  // Drop zero-length edges produced by vertices lying exactly on the line.
  Polygon clean;
  const std::size_t m = out.vertices.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Point a = out.vertices[k];
    const Point b = out.vertices[(k + 1) % m];
    if (m > 1 && a == b) continue;
    clean.vertices.push_back(a);
    clean.labels.push_back(out.labels[k]);
  }
  if (clean.vertices.size() < 3) return {};
  return clean;
}

Polygon clip_box(const Polygon& p, Point lo, Point hi) {
  Polygon q = clip_halfplane(p, {-1.0, 0.0}, -lo.x, Polygon::kBoundaryLabel);
  q = clip_halfplane(q, {1.0, 0.0}, hi.x, Polygon::kBoundaryLabel);
  q = clip_halfplane(q, {0.0, -1.0}, -lo.y, Polygon::kBoundaryLabel);
  return clip_halfplane(q, {0.0, 1.0}, hi.y, Polygon::kBoundaryLabel);
}

bool contains(const Polygon& p, Point q, double tol) {
  const auto& v = p.vertices;
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t k = 0; k < n; ++k) {
    const Point e = v[(k + 1) % n] - v[k];
    const double len = norm(e);
    if (len == 0.0) continue;
    // Outward distance of q past edge k.
    if (-cross(e, q - v[k]) / len > tol) return false;
  }
  return true;
}

double segment_distance(Point a, Point b, Point q) {
  const Point e = b - a;
  const double l2 = norm2(e);
  double t = l2 > 0.0 ? dot(q - a, e) / l2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(q - (a + t * e));
}

double boundary_distance(const Polygon& p, Point q) {
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n = p.vertices.size();
  for (std::size_t k = 0; k < n; ++k) {
    d = std::min(d, segment_distance(p.vertices[k], p.vertices[(k + 1) % n], q));
  }
  return d;
}

}  // namespace entropic
