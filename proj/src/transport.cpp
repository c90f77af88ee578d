#include "entropic/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entropic/error.hpp"

namespace entropic {

namespace {

double wrap01(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

std::size_t locate_or_throw(const Grid& grid, Point x) {
  const auto node = grid.locate(x);
  if (!node) throw DomainError("point outside the map's grid");
  return *node;
}

// Refines the curve so that both coordinate maps are affine on every piece.
MonotoneCurve refine(const MonotoneCurve& c, const std::vector<double>& at_x, const std::vector<double>& at_y) {
  MonotoneCurve out;
  out.push_back(c.front());
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    const CurvePoint p = c[k];
    const CurvePoint q = c[k + 1];
    std::vector<double> ts;
    if (q.x > p.x)
      for (double v : at_x)
        if (v > p.x && v < q.x) ts.push_back((v - p.x) / (q.x - p.x));
    if (q.y > p.y)
      for (double v : at_y)
        if (v > p.y && v < q.y) ts.push_back((v - p.y) / (q.y - p.y));
    std::sort(ts.begin(), ts.end());
    for (double t : ts) out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    out.push_back(q);
  }
  return out;
}

Measure wrap_line(DomainPtr domain, const LineMeasure& line) {
  if (line.purely_atomic()) {
    std::vector<Point> atoms;
    std::vector<double> weights;
    for (const auto& a : line.atoms()) {
      atoms.push_back({a.x, 0.0});
      weights.push_back(a.w);
    }
    return Measure::discrete(std::move(domain), std::move(atoms), std::move(weights));
  }
  return Measure::piecewise(std::move(domain), line);
}

double interpolate_density(const GridDensity& g, double x) {
  const auto& nodes = g.grid->nodes;
  const std::size_t n = nodes.size();
  const bool circle = g.grid->domain->kind() == DomainKind::kCircle;
  const double h = g.grid->spacing;
  double s = x / h;
  auto k = static_cast<std::size_t>(std::floor(s));
  if (!circle && k >= n - 1) return g.density[n - 1];
  k = std::min(k, n - 1);
  const double t = s - static_cast<double>(k);
  const std::size_t k1 = circle ? (k + 1) % n : k + 1;
  return (1.0 - t) * g.density[k] + t * g.density[k1];
}

}  // namespace

Point apply(const TransportMap& g, Point x) {
  return std::visit(
      [&](const auto& map) -> Point {
        using T = std::decay_t<decltype(map)>;
        if constexpr (std::is_same_v<T, Grid1DMap>) {
          return {map.values[locate_or_throw(*map.grid, x)], 0.0};
        } else if constexpr (std::is_same_v<T, GridArgmaxMap>) {
          return map.targets[locate_or_throw(*map.grid, x)];
        } else {
          return map.tessellation->sites[map.tessellation->cell_of(x)];
        }
      },
      g);
}

Measure pushforward(const TransportMap& g) {
  return std::visit(
      [](const auto& map) -> Measure {
        using T = std::decay_t<decltype(map)>;
        if constexpr (std::is_same_v<T, LaguerreAssign>) {
          const Tessellation& t = *map.tessellation;
          double total = 0.0;
          for (double m : t.masses) total += m;
          std::vector<double> w;
          for (double m : t.masses) w.push_back(m / total);
          return Measure::discrete(t.domain, t.sites, std::move(w));
        } else {
          std::vector<Point> atoms;
          if constexpr (std::is_same_v<T, Grid1DMap>) {
            for (double v : map.values) atoms.push_back({v, 0.0});
          } else {
            atoms = map.targets;
          }
          return Measure::discrete(map.grid->domain, std::move(atoms), reference_weights(*map.grid));
        }
      },
      g);
}

MonotoneFunction cdf_1d(const Measure& mu) { return MonotoneFunction(to_line_measure(mu).curve(), true); }

MonotoneFunction right_inverse_1d(const MonotoneFunction& f) {
  return MonotoneFunction(swap_axes(f.curve()), !f.right_continuous());
}

Measure pushforward_1d(const MonotoneFunction& g, DomainPtr domain) {
  if (domain->kind() != DomainKind::kInterval || !domain->uniform()) {
    throw UnsupportedError("pushforward_1d needs the interval with uniform m");
  }
  return wrap_line(std::move(domain), LineMeasure::from_curve(swap_axes(g.curve())));
}

MonotoneFunction conjugate_map_1d(const MonotoneFunction& g) { return right_inverse_1d(g); }

double circle_rotation(const Measure& mu) { return to_line_measure(mu).mean() - 0.5; }

Measure conjugate_measure_1d(const Measure& mu) {
  const Domain& domain = mu.domain();
  const LineMeasure line = to_line_measure(mu);
  const MonotoneCurve swapped = swap_axes(line.curve());

  if (domain.kind() == DomainKind::kCircle) {
    if (!domain.uniform()) throw UnsupportedError("circle conjugation needs the uniform reference measure");
    return wrap_line(mu.domain_ptr(), LineMeasure::from_curve(swapped).rotated(line.mean() - 0.5));
  }
  if (domain.uniform()) return wrap_line(mu.domain_ptr(), LineMeasure::from_curve(swapped));

  if (!domain.has_full_support()) {
    throw PreconditionError("1D conjugation needs a reference density without zero cells");
  }
  const std::vector<double> knots = domain.cdf_knots();
  std::vector<double> levels;
  for (double k : knots) levels.push_back(domain.cdf(k));
  MonotoneCurve c = refine(swapped, levels, knots);
  for (auto& p : c) p = {domain.quantile(p.x), domain.cdf(p.y)};
  c.front() = {0.0, 0.0};
  c.back() = {1.0, 1.0};
  return wrap_line(mu.domain_ptr(), LineMeasure::from_curve(c));
}

Grid1DMap brenier_map_1d(const Measure& mu, GridPtr grid) {
  const Domain& domain = mu.domain();
  if (!(*grid->domain == domain)) throw InputError("grid and measure live on different domains");
  const LineMeasure line = to_line_measure(mu);
  const MonotoneCurve q = swap_axes(line.curve());
  Grid1DMap out{grid, std::vector<double>(grid->size())};
  if (domain.kind() == DomainKind::kCircle) {
    if (!domain.uniform()) throw UnsupportedError("circle transport needs the uniform reference measure");
    const double theta = line.mean() - 0.5;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      out.values[i] = wrap01(eval_left(q, wrap01(grid->nodes[i].x - theta)));
    }
    return out;
  }
  for (std::size_t i = 0; i < grid->size(); ++i) {
    out.values[i] = eval_left(q, domain.cdf(grid->nodes[i].x));
  }
  return out;
}

DiscreteBrenier brenier_map_discrete(const Measure& mu, const SolverOptions& options) {
  if (mu.domain().kind() != DomainKind::kPolygon) throw UnsupportedError("discrete Brenier map needs a polygon");
  std::vector<Point> sites;
  std::vector<double> weights;
  if (const auto* d = mu.get_if<DiscreteMeasure>()) {
    sites = d->atoms;
    weights = d->weights;
  } else if (const auto* e = mu.get_if<EmpiricalMeasure>()) {
    const Measure m = Measure::discrete(mu.domain_ptr(), e->points,
                                        std::vector<double>(e->points.size(), 1.0 / e->points.size()));
    const auto& dm = std::get<DiscreteMeasure>(m.repr());
    sites = dm.atoms;
    weights = dm.weights;
  } else {
    throw InputError("discrete Brenier map needs a discrete measure");
  }
  auto t = std::make_shared<const Tessellation>(
      semidiscrete_weights(mu.domain_ptr(), std::move(sites), std::move(weights), options));
  return {LaguerreAssign{t}, t};
}

ConjugateMap::ConjugateMap(std::shared_ptr<const Tessellation> t)
    : tessellation_(std::move(t)), vertices_(tessellation_->vertices()) {
  phi_.reserve(vertices_.size());
  for (const auto& v : vertices_) phi_.push_back(tessellation_->potential(v));
}

Point ConjugateMap::operator()(Point y) const {
  std::size_t arg = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    const double v = dot(vertices_[k], y) - phi_[k];
    if (v > best) {
      best = v;
      arg = k;
    }
  }
  return vertices_[arg];
}

Measure conjugate_measure_2d(const Tessellation& t, std::size_t n_samples, Rng& rng) {
  if (n_samples == 0) throw InputError("n_samples must be positive");
  const ConjugateMap f(std::make_shared<const Tessellation>(t));
  std::vector<Point> pts;
  pts.reserve(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) pts.push_back(f(t.domain->sample(rng)));
  return Measure::empirical(t.domain, std::move(pts));
}

Measure conjugate_measure_2d(const Measure& mu, std::size_t n_samples, Rng& rng, const SolverOptions& options) {
  const auto b = brenier_map_discrete(mu, options);
  return conjugate_measure_2d(*b.tessellation, n_samples, rng);
}

double density_reciprocity_check(const Measure& mu) {
  const auto* g = mu.get_if<GridDensity>();
  if (!g || !mu.domain().is_one_dimensional()) throw InputError("reciprocity check needs a 1D grid density");
  for (double v : g->density) {
    if (v <= 1e-12) throw PreconditionError("density touches zero");
  }
  const Domain& domain = mu.domain();
  const bool circle = domain.kind() == DomainKind::kCircle;
  const LineMeasure mu_line = to_line_measure(mu);
  const LineMeasure nu_line = to_line_measure(conjugate_measure_1d(mu));
  const MonotoneCurve q = swap_axes(mu_line.curve());
  const double theta = circle ? mu_line.mean() - 0.5 : 0.0;

  auto rho = [&](double y) { return nu_line.density(y) / domain.sigma({y, 0.0}); };
  const auto& nodes = g->grid->nodes;
  const std::size_t n = nodes.size();
  const std::size_t first = circle ? 0 : 1;
  const std::size_t last = circle ? n : n - 1;
  double r = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    const double x = nodes[i].x;
    const double fx = circle ? wrap01(mu_line.cdf(x) + theta) : domain.quantile(mu_line.cdf(x));
    const double gx = circle ? wrap01(eval_left(q, wrap01(x - theta))) : eval_left(q, domain.cdf(x));
    r = std::max(r, std::abs(g->density[i] * rho(fx) - 1.0));
    r = std::max(r, std::abs(rho(x) * interpolate_density(*g, gx) - 1.0));
  }
  return r;
}

}  // namespace entropic
