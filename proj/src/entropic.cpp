#include "entropic/entropic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "entropic/transport.hpp"

namespace entropic {

namespace {

double wrap01(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

// Hole ends coincide with atoms of mu; use the stored positions so that the
// atoms sit exactly on the ends.
void snap_ends(std::vector<Hole>& holes, const LineMeasure& mu, bool circle) {
  std::vector<double> xs;
  for (const auto& a : mu.atoms()) xs.push_back(a.x);
  if (xs.empty()) return;
  auto snap = [&](double& v) {
    auto it = std::lower_bound(xs.begin(), xs.end(), v);
    double best = v;
    double gap = 1e-9;
    for (auto c : {it, it == xs.begin() ? it : it - 1}) {
      if (c == xs.end()) continue;
      double d = std::abs(*c - v);
      if (circle) d = std::min(d, 1.0 - d);
      if (d <= gap) {
        gap = d;
        best = *c;
      }
    }
    if (circle && gap > 0.0) {
      for (double c : {xs.front(), xs.back()}) {
        const double d = std::min(std::abs(c - v), 1.0 - std::abs(c - v));
        if (d <= gap) {
          gap = d;
          best = c;
        }
      }
    }
    v = best;
  };
  for (auto& h : holes) {
    snap(h.lo);
    snap(h.hi);
  }
}

std::vector<Hole> line_holes(const Measure& nu) {
  const auto& d = std::get<DiscreteMeasure>(nu.repr());
  const Domain& domain = nu.domain();
  std::vector<std::size_t> order(d.atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d.atoms[i].x < d.atoms[j].x; });
  const bool circle = domain.kind() == DomainKind::kCircle;
  const double theta = circle ? circle_rotation(nu) : 0.0;

  std::vector<Hole> holes(d.atoms.size());
  double level = 0.0;
  for (std::size_t i : order) {
    Hole& h = holes[i];
    h.atom = i;
    h.weight = d.weights[i];
    const double a = level;
    // Same snapping as the distribution curve of mu.
    double b = level + d.weights[i];
    if (b >= 1.0 - 1e-13) b = 1.0;
    level = b;
    if (circle) {
      h.lo = wrap01(a + theta);
      // Level 1 is level 0 on the circle.
      h.hi = wrap01((b == 1.0 ? 0.0 : b) + theta);
      h.size = b - a;
    } else {
      h.lo = domain.quantile(a);
      h.hi = domain.quantile(b);
      h.size = domain.mass(h.lo, h.hi);
    }
  }
  return holes;
}

// mu((lo, hi)), wrapping through 0 on the circle when lo >= hi.
double open_arc_mass(const LineMeasure& mu, double lo, double hi, bool circle, double buffer) {
  if (!circle || lo < hi) return mu.open_mass(lo + buffer, hi - buffer);
  const double a = lo + buffer;
  const double b = hi - buffer;
  if (a < 1.0 && b > 0.0) return mu.open_mass(a, 1.0) + mu.cdf_left(b);
  return mu.open_mass(a - (a >= 1.0 ? 1.0 : 0.0), b + (b <= 0.0 ? 1.0 : 0.0));
}

// Cloud points or atoms with their masses, coincident points merged.
std::vector<std::pair<Point, double>> weighted_support(const Measure& mu) {
  std::vector<std::pair<Point, double>> out;
  if (const auto* d = mu.get_if<DiscreteMeasure>()) {
    for (std::size_t i = 0; i < d->atoms.size(); ++i) out.push_back({d->atoms[i], d->weights[i]});
    return out;
  }
  if (const auto* l = mu.get_if<LineMeasure>()) {
    for (const auto& a : l->atoms()) out.push_back({{a.x, 0.0}, a.w});
    return out;
  }
  const auto* e = mu.get_if<EmpiricalMeasure>();
  if (!e) return out;
  std::map<std::pair<double, double>, std::size_t> counts;
  for (const auto& p : e->points) ++counts[{p.x, p.y}];
  const double w = 1.0 / static_cast<double>(e->points.size());
  for (const auto& [p, c] : counts) out.push_back({{p.first, p.second}, w * static_cast<double>(c)});
  return out;
}

}  // namespace

EntropicSample entropic_from_nu(DirichletSample nu, Rng& rng, const EntropicOptions& options) {
  const Measure& nm = nu.nu;
  if (!nm.get_if<DiscreteMeasure>()) throw InputError("entropic sample needs a discrete nu");
  EntropicSample s{0.0, 0, {}, nu, nm, {}, nullptr};
  if (nm.domain().is_one_dimensional()) {
    s.mu = conjugate_measure_1d(nm);
    s.holes = line_holes(nm);
    snap_ends(s.holes, to_line_measure(s.mu), nm.domain().kind() == DomainKind::kCircle);
    return s;
  }
  const auto b = brenier_map_discrete(nm, options.solver);
  s.tessellation = b.tessellation;
  const auto& d = std::get<DiscreteMeasure>(nm.repr());
  for (std::size_t i = 0; i < b.tessellation->size(); ++i) {
    Hole h;
    h.atom = i;
    h.weight = d.weights[i];
    h.size = b.tessellation->masses[i];
    h.cell = b.tessellation->cells[i];
    s.holes.push_back(std::move(h));
  }
  s.mu = conjugate_measure_2d(*b.tessellation, options.cloud_points, rng);
  return s;
}

EntropicSample sample_entropic(double beta, DomainPtr domain, std::uint64_t seed, const Truncation& truncation,
                               const EntropicOptions& options) {
  Rng rng(seed);
  DirichletSample nu = sample_dirichlet_ferguson(beta, std::move(domain), rng, truncation);
  try {
    EntropicSample s = entropic_from_nu(nu, rng, options);
    s.beta = beta;
    s.seed = seed;
    s.truncation = truncation;
    return s;
  } catch (const SolverError& e) {
    EntropicSample failed{beta, seed, truncation, nu, nu.nu, {}, nullptr};
    throw SampleError(e, replay_bundle(failed));
  }
}

std::vector<double> hole_report(const EntropicSample& s, double buffer) {
  std::vector<double> out;
  if (s.mu.domain().is_one_dimensional()) {
    const LineMeasure mu = to_line_measure(s.mu);
    const bool circle = s.mu.domain().kind() == DomainKind::kCircle;
    for (const auto& h : s.holes) out.push_back(open_arc_mass(mu, h.lo, h.hi, circle, buffer));
    return out;
  }
  const auto* e = s.mu.get_if<EmpiricalMeasure>();
  if (!e) throw InputError("2D hole report needs an empirical mu");
  std::vector<std::size_t> counts(s.holes.size(), 0);
  for (const auto& p : e->points) {
    for (std::size_t i = 0; i < s.holes.size(); ++i) {
      const Polygon& c = s.holes[i].cell;
      if (c.empty() || !contains(c, p)) continue;
      if (boundary_distance(c, p) > buffer) ++counts[i];
    }
  }
  for (std::size_t c : counts) out.push_back(static_cast<double>(c) / static_cast<double>(e->points.size()));
  return out;
}

AtomReport atom_report(const EntropicSample& s, double tol) {
  const Domain& domain = s.mu.domain();
  auto pts = weighted_support(s.mu);
  AtomReport best;
  if (domain.is_one_dimensional()) {
    for (const auto& [p, w] : pts) {
      double m = 0.0;
      for (const auto& [q, v] : pts)
        if (distance(domain, p, q) <= tol) m += v;
      if (m > best.mass) best = {m, p};
    }
    return best;
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first.x < b.first.x; });
  std::size_t lo = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point p = pts[i].first;
    while (pts[lo].first.x < p.x - tol) ++lo;
    double m = 0.0;
    for (std::size_t j = lo; j < pts.size() && pts[j].first.x <= p.x + tol; ++j)
      if (norm(pts[j].first - p) <= tol) m += pts[j].second;
    if (m > best.mass) best = {m, p};
  }
  return best;
}

double skeleton_fraction(const EntropicSample& s, double eps) {
  if (!s.tessellation) throw UnsupportedError("skeleton check needs a 2D sample");
  const auto* e = s.mu.get_if<EmpiricalMeasure>();
  if (!e) throw InputError("skeleton check needs an empirical mu");
  const auto pts = weighted_support(s.mu);
  double near = 0.0;
  for (const auto& [p, w] : pts)
    if (s.tessellation->skeleton_distance(p) <= eps) near += w;
  return near;
}

Json replay_bundle(const EntropicSample& s) {
  return {{"seed", s.seed},
          {"beta", s.beta},
          {"truncation", {{"remainder_below", s.truncation.remainder_below}, {"max_terms", s.truncation.max_terms}}},
          {"nu", to_json(s.nu.nu)}};
}

Json to_json(const EntropicSample& s) {
  Json holes = Json::array();
  for (const auto& h : s.holes) {
    Json j{{"atom", h.atom}, {"weight", h.weight}, {"size", h.size}};
    if (s.tessellation) {
      Json v = Json::array();
      for (const auto& p : h.cell.vertices) v.push_back({p.x, p.y});
      j["cell"] = v;
    } else {
      j["interval"] = {h.lo, h.hi};
    }
    holes.push_back(j);
  }
  Json j = replay_bundle(s);
  j["holes"] = holes;
  j["remainder"] = s.nu.sticks.remainder;
  j["sticks"] = s.nu.sticks.lambda.size();
  return j;
}

}  // namespace entropic
