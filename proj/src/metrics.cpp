#include "entropic/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entropic/error.hpp"

namespace entropic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sum over the pieces of [0, 1] on which u -> a(u) - b(u + shift) is affine of
// kernel(D(start), D(end)) * length, using the one-sided limits at the ends.
template <class Kernel>
double integrate_difference(const MonotoneCurve& a, const MonotoneCurve& b, double shift, Kernel kernel) {
  std::vector<double> cuts{0.0, 1.0};
  for (const auto& p : a)
    if (p.x > 0.0 && p.x < 1.0) cuts.push_back(p.x);
  for (const auto& p : b) {
    const double u = p.x - shift;
    if (u > 0.0 && u < 1.0) cuts.push_back(u);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double u0 = cuts[k];
    const double len = cuts[k + 1] - u0;
    if (len <= 0.0) continue;
    const double s1 = u0 + len / 3.0;
    const double s2 = u0 + 2.0 * len / 3.0;
    const double d1 = eval_right(a, s1) - eval_right(b, s1 + shift);
    const double d2 = eval_right(a, s2) - eval_right(b, s2 + shift);
    total += kernel(2.0 * d1 - d2, 2.0 * d2 - d1) * len;
  }
  return total;
}

double square_kernel(double d0, double d1) { return (d0 * d0 + d0 * d1 + d1 * d1) / 3.0; }

double abs_kernel(double d0, double d1) {
  if (d0 * d1 >= 0.0) return 0.5 * std::abs(d0 + d1);
  return (d0 * d0 + d1 * d1) / (2.0 * (std::abs(d0) + std::abs(d1)));
}

// Quantile function extended by Q(u + 1) = Q(u) + 1 over [-1, 2].
MonotoneCurve lifted(const MonotoneCurve& q) {
  MonotoneCurve out;
  for (int k = -1; k <= 1; ++k)
    for (const auto& p : q) out.push_back({p.x + k, p.y + k});
  return out;
}

bool same_grid(const GridPtr& a, const GridPtr& b) {
  return a == b || (a->size() == b->size() && *a->domain == *b->domain && a->nodes == b->nodes);
}

const GridPtr* grid_of(const TransportMap& g) {
  if (const auto* m = std::get_if<Grid1DMap>(&g)) return &m->grid;
  if (const auto* m = std::get_if<GridArgmaxMap>(&g)) return &m->grid;
  return nullptr;
}

// Image of grid node k (at position x); grid maps are read off directly.
Point image_at(const TransportMap& g, std::size_t k, Point x) {
  if (const auto* m = std::get_if<Grid1DMap>(&g)) return {m->values[k], 0.0};
  if (const auto* m = std::get_if<GridArgmaxMap>(&g)) return m->targets[k];
  return apply(g, x);
}

Polygon intersect(const Polygon& a, const Polygon& b) {
  Polygon p = a;
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n && !p.empty(); ++k) {
    const Point v = b.vertices[k];
    const Point e = b.vertices[(k + 1) % n] - v;
    const Point normal{e.y, -e.x};
    p = clip_halfplane(p, normal, dot(normal, v), Polygon::kBoundaryLabel);
  }
  return p;
}

}  // namespace

EntropyValue EntropyValue::infinite() { return {kInf, false}; }

EntropyValue relative_entropy(const Measure& mu) {
  if (const auto* g = mu.get_if<GridDensity>()) {
    const auto w = reference_weights(*g->grid);
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double e = g->density[i];
      if (e > 0.0) s += w[i] * e * std::log(e);
    }
    return {s, true};
  }
  const auto* line = mu.get_if<LineMeasure>();
  if (!line || !line->atoms().empty()) return EntropyValue::infinite();

  const Domain& d = mu.domain();
  const auto knots = d.cdf_knots();
  double s = 0.0;
  for (const auto& sl : line->slabs()) {
    const double q = sl.w / (sl.b - sl.a);
    std::vector<double> cuts{sl.a};
    for (double k : knots)
      if (k > sl.a && k < sl.b) cuts.push_back(k);
    cuts.push_back(sl.b);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double len = cuts[k + 1] - cuts[k];
      const double sigma = d.sigma({0.5 * (cuts[k] + cuts[k + 1]), 0.0});
      if (sigma <= 0.0) return EntropyValue::infinite();
      s += len * q * std::log(q / sigma);
    }
  }
  return {s, true};
}

EntropyValue reverse_entropy(const Measure& nu) {
  if (const auto* g = nu.get_if<GridDensity>()) {
    const auto w = reference_weights(*g->grid);
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] <= 0.0) continue;
      if (g->density[i] <= 0.0) return EntropyValue::infinite();
      s -= w[i] * std::log(g->density[i]);
    }
    return {s, true};
  }
  const auto* line = nu.get_if<LineMeasure>();
  if (!line) return EntropyValue::infinite();

  const Domain& d = nu.domain();
  const auto knots = d.cdf_knots();
  double s = 0.0;
  double covered = 0.0;
  for (const auto& sl : line->slabs()) {
    if (d.mass(covered, sl.a) > 1e-15) return EntropyValue::infinite();
    const double q = sl.w / (sl.b - sl.a);
    std::vector<double> cuts{sl.a};
    for (double k : knots)
      if (k > sl.a && k < sl.b) cuts.push_back(k);
    cuts.push_back(sl.b);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double sigma = d.sigma({0.5 * (cuts[k] + cuts[k + 1]), 0.0});
      if (sigma <= 0.0) continue;
      s -= d.mass(cuts[k], cuts[k + 1]) * std::log(q / sigma);
    }
    covered = sl.b;
  }
  if (d.mass(covered, 1.0) > 1e-15) return EntropyValue::infinite();
  return {s, true};
}

double entropy_duality_gap(const Measure& mu) {
  const auto* g = mu.get_if<GridDensity>();
  if (!g || !mu.domain().is_one_dimensional()) throw InputError("duality gap needs a 1D grid density");
  for (double v : g->density)
    if (v <= 1e-12) throw PreconditionError("density must stay away from zero");
  const EntropyValue lhs = relative_entropy(conjugate_measure_1d(mu));
  const EntropyValue rhs = reverse_entropy(mu);
  if (!lhs.finite || !rhs.finite) return kInf;
  return std::abs(lhs.value - rhs.value);
}

double wasserstein_1d(const Measure& mu, const Measure& nu) {
  if (!(mu.domain() == nu.domain())) throw InputError("measures live on different domains");
  if (!mu.domain().is_one_dimensional()) throw UnsupportedError("wasserstein_1d needs a 1D domain");
  const MonotoneCurve qa = swap_axes(to_line_measure(mu).curve());
  const MonotoneCurve qb = swap_axes(to_line_measure(nu).curve());
  if (mu.domain().kind() == DomainKind::kInterval) {
    return std::sqrt(std::max(0.0, integrate_difference(qa, qb, 0.0, square_kernel)));
  }
  const MonotoneCurve lb = lifted(qb);
  auto cost = [&](double theta) { return integrate_difference(qa, lb, theta, square_kernel); };
  // Convex in the offset: coarse scan, then golden section around the best node.
  const int n = 64;
  int best = 0;
  double best_cost = kInf;
  for (int k = 0; k <= n; ++k) {
    const double c = cost(-1.0 + 2.0 * k / n);
    if (c < best_cost) {
      best_cost = c;
      best = k;
    }
  }
  double lo = -1.0 + 2.0 * std::max(0, best - 1) / n;
  double hi = -1.0 + 2.0 * std::min(n, best + 1) / n;
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - r * (hi - lo);
  double x2 = lo + r * (hi - lo);
  double f1 = cost(x1);
  double f2 = cost(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = cost(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = cost(x2);
    }
  }
  return std::sqrt(std::max(0.0, std::min({best_cost, f1, f2})));
}

double wasserstein_2d_upper(const TransportMap& g1, const TransportMap& g2, const GridPtr& grid) {
  const auto* l1 = std::get_if<LaguerreAssign>(&g1);
  const auto* l2 = std::get_if<LaguerreAssign>(&g2);
  if (l1 && l2) {
    const Tessellation& a = *l1->tessellation;
    const Tessellation& b = *l2->tessellation;
    if (!(*a.domain == *b.domain)) throw InputError("tessellations live on different domains");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.cells[i].empty()) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b.cells[j].empty()) continue;
        const Polygon p = intersect(a.cells[i], b.cells[j]);
        if (!p.empty()) s += a.domain->mass(p) * norm2(a.sites[i] - b.sites[j]);
      }
    }
    return std::sqrt(s);
  }
  if (!grid) throw InputError("a grid is required for grid-based maps");
  for (const auto* m : {&g1, &g2}) {
    if (const GridPtr* gp = grid_of(*m); gp && !same_grid(*gp, grid)) throw InputError("map grids differ");
  }
  const auto w = reference_weights(*grid);
  const DomainKind kind = grid->domain->kind();
  double s = 0.0;
  for (std::size_t k = 0; k < grid->size(); ++k) {
    const Point x = grid->nodes[k];
    const Point a = image_at(g1, k, x);
    const Point b = image_at(g2, k, x);
    const double d = raw_distance(kind, a, b);
    s += w[k] * d * d;
  }
  return std::sqrt(s);
}

double l2_distance_sq(const MonotoneFunction& g1, const MonotoneFunction& g2) {
  return integrate_difference(g1.curve(), g2.curve(), 0.0, square_kernel);
}

double l1_distance(const MonotoneFunction& g1, const MonotoneFunction& g2) {
  return integrate_difference(g1.curve(), g2.curve(), 0.0, abs_kernel);
}

std::vector<double> conjugation_continuity_probe(const std::vector<Measure>& sequence, const Measure& limit) {
  const Measure lc = conjugate_measure_1d(limit);
  std::vector<double> out;
  out.reserve(sequence.size());
  for (const auto& mu : sequence) out.push_back(wasserstein_1d(conjugate_measure_1d(mu), lc));
  return out;
}

double assignment_cost(const std::vector<Point>& a, const std::vector<Point>& b) {
  const std::size_t n = a.size();
  if (b.size() != n || n == 0) throw InputError("assignment needs two clouds of equal, positive size");
  if (n > 512) throw InputError("assignment is limited to 512 points");
  // Hungarian method with row and column potentials, 1-based.
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0);
  std::vector<std::size_t> way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = norm2(a[i0 - 1] - b[j - 1]) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) total += norm2(a[p[j] - 1] - b[j - 1]);
  return total / static_cast<double>(n);
}

double wasserstein_empirical_2d(const std::vector<Point>& a, const std::vector<Point>& b) {
  return std::sqrt(assignment_cost(a, b));
}

}  // namespace entropic
