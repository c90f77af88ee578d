#include "entropic/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "entropic/error.hpp"

namespace entropic {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kMassTol = 1e-10;
constexpr double kDensityFloor = 1e-300;

bool same_domain(const Domain& a, const Domain& b) { return &a == &b || a == b; }

void check_probability(const std::vector<double>& w) {
  double total = 0.0;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InputError("weights must be finite and >= 0");
    total += x;
  }
  if (std::abs(total - 1.0) > kMassTol) {
    throw InputError("weights sum to " + std::to_string(total) + ", expected 1");
  }
}

}  // namespace

Measure Measure::discrete(DomainPtr domain, std::vector<Point> atoms, std::vector<double> weights) {
  if (atoms.size() != weights.size()) throw InputError("atoms and weights differ in length");
  if (atoms.empty()) throw InputError("discrete measure needs at least one atom");
  check_probability(weights);
  for (auto& a : atoms) {
    domain->require_contains(a);
    a = domain->canonical(a);
  }

  // Merge coincident atoms, keeping first-occurrence order.
  const std::size_t n = atoms.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return atoms[i].x < atoms[j].x || (atoms[i].x == atoms[j].x && atoms[i].y < atoms[j].y);
  });
  std::vector<std::size_t> target(n);
  std::iota(target.begin(), target.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    for (std::size_t l = k; l-- > 0;) {
      const std::size_t j = order[l];
      if (atoms[i].x - atoms[j].x > kMergeTol) break;
      if (std::abs(atoms[i].y - atoms[j].y) <= kMergeTol) {
        target[i] = std::min(target[i], target[j]);
      }
    }
  }
  // Circle: atoms near 1 coincide with atoms near 0.
  if (domain->kind() == DomainKind::kCircle) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (raw_distance(DomainKind::kCircle, atoms[i], atoms[j]) <= kMergeTol)
          target[i] = std::min(target[i], target[j]);
  }

  DiscreteMeasure d;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t root = target[i];
    while (target[root] != root) root = target[root];
    if (weights[i] == 0.0 && slot[root] < 0) continue;
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(d.atoms.size());
      d.atoms.push_back(atoms[root]);
      d.weights.push_back(0.0);
    }
    d.weights[slot[root]] += weights[i];
  }
  return Measure(std::move(domain), std::move(d));
}

Measure Measure::grid_density(GridPtr grid, std::vector<double> eta, bool normalize) {
  if (eta.size() != grid->size()) throw InputError("density length differs from grid size");
  for (double& v : eta) {
    if (!std::isfinite(v) || v < 0.0) throw InputError("density values must be finite and >= 0");
    if (v < kDensityFloor) v = 0.0;
  }
  const auto w = reference_weights(*grid);
  double total = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) total += w[i] * eta[i];
  if (!(total > 0.0)) throw DegenerateError("density has no mass");
  if (normalize) {
    for (double& v : eta) v /= total;
  } else if (std::abs(total - 1.0) > kMassTol) {
    throw InputError("density quadrature sums to " + std::to_string(total));
  }
  DomainPtr d = grid->domain;
  return Measure(std::move(d), GridDensity{std::move(grid), std::move(eta)});
}

Measure Measure::empirical(DomainPtr domain, std::vector<Point> points) {
  if (points.empty()) throw InputError("empirical measure needs at least one point");
  for (auto& p : points) {
    domain->require_contains(p);
    p = domain->canonical(p);
  }
  return Measure(std::move(domain), EmpiricalMeasure{std::move(points)});
}

Measure Measure::piecewise(DomainPtr domain, LineMeasure line) {
  if (!domain->is_one_dimensional()) throw UnsupportedError("piecewise measures are 1D only");
  for (const auto& a : line.atoms()) domain->require_contains({a.x, 0.0});
  for (const auto& s : line.slabs()) {
    domain->require_contains({s.a, 0.0});
    domain->require_contains({s.b, 0.0});
  }
  return Measure(std::move(domain), std::move(line));
}

Measure Measure::reference(DomainPtr domain) {
  if (!domain->is_one_dimensional()) {
    throw UnsupportedError("2D reference measure needs a grid; use grid_density");
  }
  std::vector<Slab> slabs;
  if (domain->uniform()) {
    slabs.push_back({0.0, 1.0, 1.0});
  } else {
    const int k = domain->density_nx();
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
      const double w = domain->density_values()[i] / k;
      if (w > 0.0) slabs.push_back({static_cast<double>(i) / k, static_cast<double>(i + 1) / k, w});
      total += w;
    }
    for (auto& s : slabs) s.w /= total;
  }
  return piecewise(std::move(domain), LineMeasure({}, std::move(slabs)));
}

std::string Measure::type_name() const {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, DiscreteMeasure>) return "discrete";
        if constexpr (std::is_same_v<T, GridDensity>) return "grid";
        if constexpr (std::is_same_v<T, EmpiricalMeasure>) return "empirical";
        return "piecewise";
      },
      repr_);
}

LineMeasure to_line_measure(const Measure& mu) {
  const Domain& domain = mu.domain();
  if (!domain.is_one_dimensional()) throw UnsupportedError("exact 1D path needs a 1D domain");

  if (const auto* line = mu.get_if<LineMeasure>()) return *line;
  if (const auto* d = mu.get_if<DiscreteMeasure>()) {
    std::vector<Atom1D> atoms;
    for (std::size_t i = 0; i < d->atoms.size(); ++i) atoms.push_back({d->atoms[i].x, d->weights[i]});
    return LineMeasure(std::move(atoms), {});
  }
  if (const auto* e = mu.get_if<EmpiricalMeasure>()) {
    std::vector<Atom1D> atoms;
    const double w = 1.0 / static_cast<double>(e->points.size());
    for (const auto& p : e->points) atoms.push_back({p.x, w});
    return LineMeasure(std::move(atoms), {});
  }

  const auto& g = std::get<GridDensity>(mu.repr());
  const auto& nodes = g.grid->nodes;
  const std::size_t n = nodes.size();
  const bool circle = domain.kind() == DomainKind::kCircle;
  const std::size_t cells = circle ? n : n - 1;
  std::vector<double> knots = domain.cdf_knots();
  std::vector<Slab> slabs;
  double total = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = nodes[i].x;
    const double b = i + 1 < n ? nodes[i + 1].x : 1.0;
    const double eta = 0.5 * (g.density[i] + g.density[(i + 1) % n]);
    if (eta <= 0.0) continue;
    // Split at density knots of m so each slab has constant Lebesgue density.
    std::vector<double> cuts{a};
    for (double k : knots)
      if (k > a && k < b) cuts.push_back(k);
    cuts.push_back(b);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double w = eta * domain.mass(cuts[k], cuts[k + 1]);
      if (w > 0.0) {
        slabs.push_back({cuts[k], cuts[k + 1], w});
        total += w;
      }
    }
  }
  if (!(total > 0.0)) throw DegenerateError("density has no mass");
  for (auto& s : slabs) s.w /= total;
  return LineMeasure({}, std::move(slabs));
}

Partition Partition::intervals(DomainPtr domain, std::vector<std::vector<Interval>> blocks) {
  if (!domain->is_one_dimensional()) throw UnsupportedError("interval partitions are 1D only");
  if (blocks.empty()) throw InputError("partition needs at least one block");
  const bool circle = domain->kind() == DomainKind::kCircle;

  std::vector<Interval> all;
  for (auto& block : blocks) {
    std::vector<Interval> split;
    for (const auto& [a, b] : block) {
      if (a < -kMergeTol || a > 1.0 + kMergeTol || b < -kMergeTol || b > 1.0 + kMergeTol) {
        throw DomainError("partition interval outside [0, 1]");
      }
      if (a < b) {
        split.push_back({a, b});
      } else if (circle && a > b) {
        split.push_back({a, 1.0});
        if (b > 0.0) split.push_back({0.0, b});
      } else {
        throw InputError("partition interval is empty");
      }
    }
    all.insert(all.end(), split.begin(), split.end());
    block = std::move(split);
  }
  std::sort(all.begin(), all.end());
  double at = 0.0;
  for (const auto& [a, b] : all) {
    if (std::abs(a - at) > kMergeTol) throw InputError("partition blocks overlap or leave gaps");
    at = b;
  }
  if (std::abs(at - 1.0) > kMergeTol) throw InputError("partition does not cover the domain");

  Partition p;
  p.domain_ = std::move(domain);
  for (const auto& block : blocks) {
    double m = 0.0;
    for (const auto& [a, b] : block) m += p.domain_->mass(a, b);
    p.masses_.push_back(m);
  }
  p.blocks_ = std::move(blocks);
  return p;
}

Partition Partition::from_cuts(DomainPtr domain, const std::vector<double>& cuts) {
  std::vector<std::vector<Interval>> blocks;
  double at = 0.0;
  for (double c : cuts) {
    blocks.push_back({{at, c}});
    at = c;
  }
  blocks.push_back({{at, 1.0}});
  return intervals(std::move(domain), std::move(blocks));
}

Partition Partition::grid_labels(GridPtr grid, std::vector<int> labels, int blocks) {
  if (labels.size() != grid->size()) throw InputError("one label per grid cell required");
  if (blocks < 1) throw InputError("partition needs at least one block");
  const auto w = reference_weights(*grid);
  Partition p;
  p.masses_.assign(static_cast<std::size_t>(blocks), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= blocks) throw InputError("label out of range");
    p.masses_[labels[i]] += w[i];
  }
  p.domain_ = grid->domain;
  p.grid_ = std::move(grid);
  p.labels_ = std::move(labels);
  return p;
}

std::size_t Partition::block_of(Point p) const {
  if (grid_) {
    const auto node = grid_->locate(p);
    if (!node) throw DomainError("point outside the partitioned domain");
    return static_cast<std::size_t>(labels_[*node]);
  }
  domain_->require_contains(p);
  const double x = domain_->canonical(p).x;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (const auto& [a, b] : blocks_[i]) {
      if (x >= a && (x < b || (b >= 1.0 && x >= 1.0))) return i;
    }
  }
  throw DomainError("point not covered by the partition");
}

std::vector<double> coarse_grain(const Measure& mu, const Partition& partition) {
  if (!same_domain(mu.domain(), partition.domain())) {
    throw InputError("measure and partition live on different domains");
  }
  std::vector<double> out(partition.size(), 0.0);

  if (const auto* d = mu.get_if<DiscreteMeasure>()) {
    for (std::size_t i = 0; i < d->atoms.size(); ++i) out[partition.block_of(d->atoms[i])] += d->weights[i];
    return out;
  }
  if (const auto* e = mu.get_if<EmpiricalMeasure>()) {
    const double w = 1.0 / static_cast<double>(e->points.size());
    for (const auto& p : e->points) out[partition.block_of(p)] += w;
    return out;
  }
  if (const auto* g = mu.get_if<GridDensity>(); g && partition.grid()) {
    if (g->grid->size() != partition.grid()->size()) throw InputError("grid mismatch");
    const auto w = reference_weights(*g->grid);
    for (std::size_t i = 0; i < w.size(); ++i) out[partition.labels()[i]] += w[i] * g->density[i];
    return out;
  }
  if (!mu.domain().is_one_dimensional()) throw InputError("2D densities need a grid partition");

  const LineMeasure line = to_line_measure(mu);
  const bool interval = mu.domain().kind() == DomainKind::kInterval;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    for (const auto& [a, b] : partition.blocks()[i]) {
      const double upper = (interval && b >= 1.0) ? line.cdf(1.0) : line.cdf_left(b);
      out[i] += upper - line.cdf_left(a);
    }
  }
  return out;
}

double min_entropy_given_marginals(const Partition& partition, const std::vector<double>& x) {
  const auto& m = partition.masses();
  if (x.size() != m.size()) throw InputError("marginal vector length differs from partition size");
  check_probability(x);
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0.0) continue;
    if (x[i] == 0.0) return std::numeric_limits<double>::infinity();
    s -= m[i] * std::log(x[i] / m[i]);
  }
  return s;
}

}  // namespace entropic
