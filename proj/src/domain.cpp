#include "entropic/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "entropic/error.hpp"

namespace entropic {

namespace {

constexpr double kSliverFraction = 1e-12;

double wrap01(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

}  // namespace

Domain Domain::interval() {
  Domain d;
  d.kind_ = DomainKind::kInterval;
  return d;
}

Domain Domain::circle() {
  Domain d;
  d.kind_ = DomainKind::kCircle;
  return d;
}

Domain Domain::unit_square() { return polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

Domain Domain::polygon(std::vector<Point> vertices) {
  if (vertices.size() < 3) throw InputError("polygon needs at least three vertices");
  double a = signed_area(vertices);
  if (a < 0.0) {
    std::reverse(vertices.begin(), vertices.end());
    a = -a;
  }
  if (!(a > 0.0)) throw InputError("polygon has zero area");
  const std::size_t n = vertices.size();
  double scale = 0.0;
  for (const auto& v : vertices) scale = std::max({scale, std::abs(v.x), std::abs(v.y)});
  for (std::size_t k = 0; k < n; ++k) {
    const Point e1 = vertices[(k + 1) % n] - vertices[k];
    const Point e2 = vertices[(k + 2) % n] - vertices[(k + 1) % n];
    if (norm(e1) == 0.0) throw InputError("polygon has repeated vertices");
    if (cross(e1, e2) < -1e-12 * std::max(1.0, scale * scale)) {
      throw InputError("polygon is not convex");
    }
  }

  Domain d;
  d.kind_ = DomainKind::kPolygon;
  d.polygon_ = Polygon(std::move(vertices));
  d.lo_ = d.hi_ = d.polygon_.vertices.front();
  for (const auto& v : d.polygon_.vertices) {
    d.lo_ = {std::min(d.lo_.x, v.x), std::min(d.lo_.y, v.y)};
    d.hi_ = {std::max(d.hi_.x, v.x), std::max(d.hi_.y, v.y)};
  }
  d.volume_ = a;
  d.finalize();
  return d;
}

Domain Domain::with_density(std::vector<double> values, int nx, int ny) const {
  if (nx < 1 || ny < 1) throw InputError("density lattice must have at least one cell");
  if (is_one_dimensional() && ny != 1) throw InputError("1D density takes a single row");
  if (values.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    throw InputError("density has " + std::to_string(values.size()) + " values, expected " +
                     std::to_string(nx * ny));
  }
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) throw InputError("density values must be finite and >= 0");
  }

  Domain d = *this;
  d.nx_ = nx;
  d.ny_ = ny;
  double total = 0.0;
  if (is_one_dimensional()) {
    total = std::accumulate(values.begin(), values.end(), 0.0) / nx;
  } else {
    const double hx = (hi_.x - lo_.x) / nx;
    const double hy = (hi_.y - lo_.y) / ny;
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const Point a{lo_.x + i * hx, lo_.y + j * hy};
        const Point b{lo_.x + (i + 1) * hx, lo_.y + (j + 1) * hy};
        total += values[j * nx + i] * area(clip_box(polygon_, a, b));
      }
    }
  }
  if (!(total > 0.0)) throw DegenerateError("reference density has no mass on the domain");
  // Already normalized input is kept bit-for-bit.
  if (std::abs(total - 1.0) > 8 * std::numeric_limits<double>::epsilon()) {
    for (double& v : values) v /= total;
  }
  d.sigma_ = std::move(values);
  d.finalize();
  return d;
}

void Domain::finalize() {
  cumulative_.clear();
  pieces_.clear();
  full_support_ = true;

  if (is_one_dimensional()) {
    if (sigma_.empty()) return;
    cumulative_.assign(nx_ + 1, 0.0);
    for (int k = 0; k < nx_; ++k) {
      cumulative_[k + 1] = cumulative_[k] + sigma_[k] / nx_;
      if (sigma_[k] <= 0.0) full_support_ = false;
    }
    return;
  }

  // Triangle fans of constant-density regions, with cumulative m-mass.
  auto add_fan = [&](const Polygon& region, double density) {
    const auto& v = region.vertices;
    for (std::size_t k = 1; k + 1 < v.size(); ++k) {
      Polygon tri({v[0], v[k], v[k + 1]});
      const double mass = density * area(tri);
      if (mass <= 0.0) continue;
      const double before = pieces_.empty() ? 0.0 : pieces_.back().cumulative;
      pieces_.push_back({std::move(tri), before + mass});
    }
  };

  if (sigma_.empty()) {
    add_fan(polygon_, 1.0 / volume_);
  } else {
    const double hx = (hi_.x - lo_.x) / nx_;
    const double hy = (hi_.y - lo_.y) / ny_;
    for (int j = 0; j < ny_; ++j) {
      for (int i = 0; i < nx_; ++i) {
        const Point a{lo_.x + i * hx, lo_.y + j * hy};
        const Point b{lo_.x + (i + 1) * hx, lo_.y + (j + 1) * hy};
        const Polygon cell = clip_box(polygon_, a, b);
        if (cell.empty() || area(cell) <= kSliverFraction * hx * hy) continue;
        const double s = sigma_[j * nx_ + i];
        if (s <= 0.0) full_support_ = false;
        add_fan(cell, s);
      }
    }
  }
}

std::size_t Domain::lattice_index(Point p) const {
  const double hx = (hi_.x - lo_.x) / nx_;
  const double hy = (hi_.y - lo_.y) / ny_;
  const int i = std::clamp(static_cast<int>(std::floor((p.x - lo_.x) / hx)), 0, nx_ - 1);
  const int j = std::clamp(static_cast<int>(std::floor((p.y - lo_.y) / hy)), 0, ny_ - 1);
  return static_cast<std::size_t>(j * nx_ + i);
}

bool Domain::contains(Point p, double tol) const {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
  switch (kind_) {
    case DomainKind::kInterval:
    case DomainKind::kCircle:
      return p.x >= -tol && p.x <= 1.0 + tol;
    case DomainKind::kPolygon:
      return entropic::contains(polygon_, p, tol);
  }
  return false;
}

void Domain::require_contains(Point p) const {
  if (!contains(p)) {
    throw DomainError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                      ") is outside the domain");
  }
}

Point Domain::canonical(Point p) const {
  if (kind_ == DomainKind::kCircle) return {wrap01(p.x), 0.0};
  if (kind_ == DomainKind::kInterval) return {std::clamp(p.x, 0.0, 1.0), 0.0};
  return p;
}

double Domain::sigma(Point p) const {
  if (sigma_.empty()) return 1.0 / volume_;
  if (is_one_dimensional()) {
    const double x = kind_ == DomainKind::kCircle ? wrap01(p.x) : std::clamp(p.x, 0.0, 1.0);
    const int k = std::min(static_cast<int>(x * nx_), nx_ - 1);
    return sigma_[k];
  }
  return sigma_[lattice_index(p)];
}

double Domain::cdf(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  if (sigma_.empty()) return x;
  const int k = std::min(static_cast<int>(x * nx_), nx_ - 1);
  return std::min(1.0, cumulative_[k] + sigma_[k] * (x - static_cast<double>(k) / nx_));
}

double Domain::quantile(double u) const {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) u = 1.0;
  if (sigma_.empty()) return u;
  const auto it = std::lower_bound(cumulative_.begin() + 1, cumulative_.end(), u);
  const int k = std::min(static_cast<int>(it - cumulative_.begin()) - 1, nx_ - 1);
  if (sigma_[k] <= 0.0) return static_cast<double>(k) / nx_;
  const double x = static_cast<double>(k) / nx_ + (u - cumulative_[k]) / sigma_[k];
  return std::clamp(x, static_cast<double>(k) / nx_, static_cast<double>(k + 1) / nx_);
}

double Domain::mass(double a, double b) const { return cdf(b) - cdf(a); }

std::vector<double> Domain::cdf_knots() const {
  std::vector<double> knots;
  if (sigma_.empty()) return knots;
  for (int k = 1; k < nx_; ++k) knots.push_back(static_cast<double>(k) / nx_);
  return knots;
}

Domain::MassMoment Domain::mass_moment(const Polygon& region) const {
  MassMoment out;
  if (region.empty()) return out;
  if (sigma_.empty()) {
    const double a = area(region);
    out.mass = a / volume_;
    out.moment = out.mass * centroid(region);
    return out;
  }
  Point rlo = region.vertices.front();
  Point rhi = rlo;
  for (const auto& v : region.vertices) {
    rlo = {std::min(rlo.x, v.x), std::min(rlo.y, v.y)};
    rhi = {std::max(rhi.x, v.x), std::max(rhi.y, v.y)};
  }
  const double hx = (hi_.x - lo_.x) / nx_;
  const double hy = (hi_.y - lo_.y) / ny_;
  const int i0 = std::clamp(static_cast<int>(std::floor((rlo.x - lo_.x) / hx)), 0, nx_ - 1);
  const int i1 = std::clamp(static_cast<int>(std::floor((rhi.x - lo_.x) / hx)), 0, nx_ - 1);
  const int j0 = std::clamp(static_cast<int>(std::floor((rlo.y - lo_.y) / hy)), 0, ny_ - 1);
  const int j1 = std::clamp(static_cast<int>(std::floor((rhi.y - lo_.y) / hy)), 0, ny_ - 1);
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      const double s = sigma_[j * nx_ + i];
      if (s == 0.0) continue;
      const Point a{lo_.x + i * hx, lo_.y + j * hy};
      const Point b{lo_.x + (i + 1) * hx, lo_.y + (j + 1) * hy};
      const Polygon piece = clip_box(region, a, b);
      if (piece.empty()) continue;
      const double m = s * area(piece);
      out.mass += m;
      out.moment = out.moment + m * centroid(piece);
    }
  }
  return out;
}

double Domain::mass(const Polygon& region) const { return mass_moment(region).mass; }

double Domain::line_integral(Point a, Point b) const {
  const double len = norm(b - a);
  if (len == 0.0) return 0.0;
  if (sigma_.empty()) return len / volume_;
  const double hx = (hi_.x - lo_.x) / nx_;
  const double hy = (hi_.y - lo_.y) / ny_;
  std::vector<double> ts{0.0, 1.0};
  const Point e = b - a;
  auto add_crossings = [&](double from, double to, double origin, double h, int count) {
    if (from == to) return;
    for (int k = 1; k < count; ++k) {
      const double t = (origin + k * h - from) / (to - from);
      if (t > 0.0 && t < 1.0) ts.push_back(t);
    }
  };
  add_crossings(a.x, b.x, lo_.x, hx, nx_);
  add_crossings(a.y, b.y, lo_.y, hy, ny_);
  std::sort(ts.begin(), ts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const double dt = ts[k + 1] - ts[k];
    if (dt <= 0.0) continue;
    const Point mid = a + (0.5 * (ts[k] + ts[k + 1])) * e;
    total += sigma_[lattice_index(mid)] * dt * len;
  }
  return total;
}

Point Domain::sample(Rng& rng) const {
  if (is_one_dimensional()) return {quantile(rng.uniform()), 0.0};
  const double total = pieces_.back().cumulative;
  const double u = rng.uniform() * total;
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), u,
                             [](const Piece& p, double v) { return p.cumulative < v; });
  if (it == pieces_.end()) it = std::prev(pieces_.end());
  const auto& t = it->region.vertices;
  double r1 = rng.uniform();
  double r2 = rng.uniform();
  if (r1 + r2 > 1.0) {
    r1 = 1.0 - r1;
    r2 = 1.0 - r2;
  }
  return t[0] + r1 * (t[1] - t[0]) + r2 * (t[2] - t[0]);
}

bool operator==(const Domain& a, const Domain& b) {
  return a.kind_ == b.kind_ && a.polygon_.vertices == b.polygon_.vertices && a.sigma_ == b.sigma_ &&
         a.nx_ == b.nx_ && a.ny_ == b.ny_;
}

double raw_distance(DomainKind kind, Point x, Point y) {
  switch (kind) {
    case DomainKind::kInterval:
      return std::abs(x.x - y.x);
    case DomainKind::kCircle: {
      double d = std::abs(x.x - y.x);
      d -= std::floor(d);
      return std::min(d, 1.0 - d);
    }
    case DomainKind::kPolygon:
      return norm(x - y);
  }
  return 0.0;
}

double distance(const Domain& domain, Point x, Point y) {
  domain.require_contains(x);
  domain.require_contains(y);
  return raw_distance(domain.kind(), x, y);
}

double diameter(const Domain& domain) {
  switch (domain.kind()) {
    case DomainKind::kInterval:
      return 1.0;
    case DomainKind::kCircle:
      return 0.5;
    case DomainKind::kPolygon: {
      double d = 0.0;
      const auto& v = domain.polygon().vertices;
      for (const auto& p : v)
        for (const auto& q : v) d = std::max(d, norm(p - q));
      return d;
    }
  }
  return 0.0;
}

GridPtr build_grid(DomainPtr domain, int resolution) {
  auto g = std::make_shared<Grid>();
  g->domain = domain;
  g->resolution = resolution;
  switch (domain->kind()) {
    case DomainKind::kInterval: {
      if (resolution < 2) throw ConfigError("interval grid needs at least 2 nodes");
      const double h = 1.0 / (resolution - 1);
      g->spacing = h;
      g->eps = h;
      for (int i = 0; i < resolution; ++i) {
        g->nodes.push_back({i == resolution - 1 ? 1.0 : i * h, 0.0});
        g->volumes.push_back(i == 0 || i == resolution - 1 ? 0.5 * h : h);
      }
      break;
    }
    case DomainKind::kCircle: {
      if (resolution < 2) throw ConfigError("circle grid needs at least 2 nodes");
      const double h = 1.0 / resolution;
      g->spacing = h;
      g->eps = 0.5 * h;
      for (int i = 0; i < resolution; ++i) {
        g->nodes.push_back({i * h, 0.0});
        g->volumes.push_back(h);
      }
      break;
    }
    case DomainKind::kPolygon: {
      if (resolution < 4) throw ConfigError("polygon grid needs at least 4 cells per axis");
      const Point lo = domain->bbox_lo();
      const Point hi = domain->bbox_hi();
      const double h = std::max(hi.x - lo.x, hi.y - lo.y) / resolution;
      g->spacing = h;
      g->eps = h * std::sqrt(2.0);
      g->origin = lo;
      g->nx = std::max(1, static_cast<int>(std::ceil((hi.x - lo.x) / h - 1e-9)));
      g->ny = std::max(1, static_cast<int>(std::ceil((hi.y - lo.y) / h - 1e-9)));
      g->lattice_to_node.assign(static_cast<std::size_t>(g->nx) * g->ny, -1);
      for (int j = 0; j < g->ny; ++j) {
        for (int i = 0; i < g->nx; ++i) {
          const Point a{lo.x + i * h, lo.y + j * h};
          const Point b{lo.x + (i + 1) * h, lo.y + (j + 1) * h};
          Polygon cell = clip_box(domain->polygon(), a, b);
          if (cell.empty()) continue;
          const double ca = area(cell);
          if (ca <= kSliverFraction * h * h) continue;
          g->lattice_to_node[j * g->nx + i] = static_cast<int>(g->nodes.size());
          g->nodes.push_back(centroid(cell));
          g->volumes.push_back(ca);
          g->cells.push_back(std::move(cell));
        }
      }
      break;
    }
  }
  return g;
}

std::optional<std::size_t> Grid::locate(Point p) const {
  const Domain& d = *domain;
  if (!d.contains(p)) return std::nullopt;
  const auto n = static_cast<long>(nodes.size());
  switch (d.kind()) {
    case DomainKind::kInterval: {
      const long i = std::clamp(std::lround(p.x / spacing), 0L, n - 1);
      return static_cast<std::size_t>(i);
    }
    case DomainKind::kCircle: {
      long i = std::lround(d.canonical(p).x / spacing) % n;
      return static_cast<std::size_t>(i);
    }
    case DomainKind::kPolygon: {
      const int i = std::clamp(static_cast<int>(std::floor((p.x - origin.x) / spacing)), 0, nx - 1);
      const int j = std::clamp(static_cast<int>(std::floor((p.y - origin.y) / spacing)), 0, ny - 1);
      const int node = lattice_to_node[j * nx + i];
      if (node >= 0) return static_cast<std::size_t>(node);
      // Dropped sliver: fall back to the nearest node.
      std::size_t best = 0;
      double bd = norm2(nodes[0] - p);
      for (std::size_t k = 1; k < nodes.size(); ++k) {
        const double dd = norm2(nodes[k] - p);
        if (dd < bd) {
          bd = dd;
          best = k;
        }
      }
      return best;
    }
  }
  return std::nullopt;
}

std::vector<double> reference_weights(const Grid& grid) {
  const Domain& d = *grid.domain;
  std::vector<double> w(grid.size(), 0.0);
  const double h = grid.spacing;
  switch (d.kind()) {
    case DomainKind::kInterval:
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.nodes[i].x;
        w[i] = d.mass(std::max(0.0, x - 0.5 * h), std::min(1.0, x + 0.5 * h));
      }
      break;
    case DomainKind::kCircle:
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double a = grid.nodes[i].x - 0.5 * h;
        const double b = grid.nodes[i].x + 0.5 * h;
        if (a < 0.0) {
          w[i] = d.mass(0.0, b) + d.mass(1.0 + a, 1.0);
        } else if (b > 1.0) {
          w[i] = d.mass(a, 1.0) + d.mass(0.0, b - 1.0);
        } else {
          w[i] = d.mass(a, b);
        }
      }
      break;
    case DomainKind::kPolygon:
      for (std::size_t i = 0; i < grid.size(); ++i) w[i] = d.mass(grid.cells[i]);
      break;
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(total > 0.0)) throw DegenerateError("reference weights vanish on the grid");
  for (double& x : w) x /= total;
  return w;
}

std::vector<double> reference_weights(const Domain& domain, const Grid& grid) {
  if (!(domain == *grid.domain)) throw InputError("grid was built for a different domain");
  return reference_weights(grid);
}

}  // namespace entropic
