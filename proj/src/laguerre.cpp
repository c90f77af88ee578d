#include "entropic/laguerre.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "entropic/error.hpp"

namespace entropic {

namespace {

constexpr double kSiteTol = 1e-12;

void check_sites(const Domain& domain, const std::vector<Point>& sites) {
  if (domain.kind() != DomainKind::kPolygon) throw UnsupportedError("Laguerre cells need a polygon domain");
  if (sites.empty()) throw InputError("at least one site required");
  for (const auto& z : sites) domain.require_contains(z);
  std::vector<Point> s = sites;
  std::sort(s.begin(), s.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  for (std::size_t k = 0; k < s.size(); ++k)
    for (std::size_t l = k + 1; l < s.size() && s[l].x - s[k].x <= kSiteTol; ++l)
      if (std::abs(s[l].y - s[k].y) <= kSiteTol) throw InputError("duplicate sites");
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

double l2_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(r);
}

std::vector<Polygon> build_cells(const Domain& domain, const std::vector<Point>& z,
                                 const std::vector<double>& alpha) {
  const std::size_t n = z.size();
  std::vector<Polygon> cells(n);
  for (std::size_t i = 0; i < n; ++i) {
    Polygon p = domain.polygon();
    for (std::size_t j = 0; j < n && !p.empty(); ++j) {
      if (j == i) continue;
      p = clip_halfplane(p, z[j] - z[i], alpha[i] - alpha[j], static_cast<int>(j));
    }
    cells[i] = std::move(p);
  }
  return cells;
}

// Dual objective sum lambda_i alpha_i - integral of max_i(<z_i, x> + alpha_i) dm.
double dual_value(const Domain& domain, const Tessellation& t, const std::vector<double>& lambda) {
  double f = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto mm = domain.mass_moment(t.cells[i]);
    f += lambda[i] * t.alpha[i] - (dot(t.sites[i], mm.moment) + t.alpha[i] * mm.mass);
  }
  return f;
}

void fix_gauge(Tessellation& t) {
  const double a0 = t.alpha[0];
  for (double& a : t.alpha) a -= a0;
}

// Solves the gauge-reduced Newton system L d = lambda - m; empty on failure.
std::vector<double> newton_direction(const Domain& domain, const Tessellation& t,
                                     const std::vector<double>& lambda) {
  const std::size_t n = t.size();
  if (n == 1) return {0.0};
  std::vector<Eigen::Triplet<double>> entries;
  std::vector<double> diag(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Polygon& c = t.cells[i];
    for (std::size_t k = 0; k < c.size(); ++k) {
      const int j = c.labels[k];
      if (j < 0 || static_cast<std::size_t>(j) <= i) continue;
      const Point a = c.vertices[k];
      const Point b = c.vertices[(k + 1) % c.size()];
      const double w = domain.line_integral(a, b) / norm(t.sites[i] - t.sites[j]);
      if (w <= 0.0) continue;
      diag[i] += w;
      diag[j] += w;
      if (i > 0 && j > 0) {
        entries.emplace_back(static_cast<int>(i - 1), j - 1, -w);
        entries.emplace_back(j - 1, static_cast<int>(i - 1), -w);
      }
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(diag[i] > 0.0)) return {};
    entries.emplace_back(static_cast<int>(i - 1), static_cast<int>(i - 1), diag[i]);
  }
  const int m = static_cast<int>(n - 1);
  Eigen::SparseMatrix<double> L(m, m);
  L.setFromTriplets(entries.begin(), entries.end());
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) rhs[i] = lambda[i + 1] - t.masses[i + 1];

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(L);
  if (solver.info() != Eigen::Success) return {};
  if ((solver.vectorD().array() <= 1e-14 * solver.vectorD().cwiseAbs().maxCoeff()).any()) return {};
  const Eigen::VectorXd d = solver.solve(rhs);
  if (solver.info() != Eigen::Success || !d.allFinite()) return {};

  std::vector<double> out(n, 0.0);
  for (int i = 0; i < m; ++i) out[i + 1] = d[i];
  return out;
}

Tessellation gradient_ascent(const DomainPtr& domain, Tessellation t, const std::vector<double>& lambda,
                             const SolverOptions& options, int used) {
  const std::size_t n = t.size();
  double step = 1.0;
  double f = dual_value(*domain, t, lambda);
  for (int it = 0; it < options.fallback_iterations; ++it) {
    const double res = mass_residual(t, lambda);
    if (res <= options.tol) {
      t.iterations = used + it;
      t.residual = res;
      return t;
    }
    std::vector<double> g(n);
    double gg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = lambda[i] - t.masses[i];
      gg += g[i] * g[i];
    }
    for (;;) {
      std::vector<double> alpha = t.alpha;
      for (std::size_t i = 0; i < n; ++i) alpha[i] += step * g[i];
      Tessellation trial = laguerre_cells(domain, t.sites, std::move(alpha));
      const double ft = dual_value(*domain, trial, lambda);
      if (ft >= f + 1e-4 * step * gg) {
        t = std::move(trial);
        f = ft;
        step *= 2.0;
        break;
      }
      step *= 0.5;
      if (step < 1e-16) {
        throw SolverError("gradient ascent stalled", res, used + it);
      }
    }
  }
  const double res = mass_residual(t, lambda);
  throw SolverError("semi-discrete solver did not converge", res, used + options.fallback_iterations);
}

}  // namespace

std::vector<double> Tessellation::power_weights() const {
  std::vector<double> w(size());
  for (std::size_t i = 0; i < size(); ++i) w[i] = 2.0 * alpha[i] + norm2(sites[i]);
  const double w0 = w.empty() ? 0.0 : w[0];
  for (double& v : w) v -= w0;
  return w;
}

std::size_t Tessellation::cell_of(Point x) const {
  std::size_t arg = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) {
    const double v = dot(sites[i], x) + alpha[i];
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  return arg;
}

double Tessellation::potential(Point x) const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) best = std::max(best, dot(sites[i], x) + alpha[i]);
  return best;
}

Potential Tessellation::potential_on(GridPtr grid) const {
  std::vector<double> v(grid->size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = potential(grid->nodes[k]);
  return Potential::make(std::move(grid), std::move(v));
}

std::vector<Point> Tessellation::vertices() const {
  std::vector<Point> all;
  for (const auto& c : cells) all.insert(all.end(), c.vertices.begin(), c.vertices.end());
  std::sort(all.begin(), all.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Point> out;
  for (const auto& p : all) {
    if (!out.empty() && std::abs(p.x - out.back().x) <= kSiteTol && std::abs(p.y - out.back().y) <= kSiteTol)
      continue;
    out.push_back(p);
  }
  return out;
}

double Tessellation::skeleton_distance(Point x) const {
  const Polygon& c = cells[cell_of(x)];
  if (c.empty()) return boundary_distance(domain->polygon(), x);
  return boundary_distance(c, x);
}

std::vector<double> alpha_from_power_weights(const std::vector<Point>& sites, const std::vector<double>& w) {
  if (w.size() != sites.size()) throw InputError("one weight per site required");
  std::vector<double> a(sites.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = 0.5 * (w[i] - norm2(sites[i]));
  return a;
}

Tessellation laguerre_cells(DomainPtr domain, std::vector<Point> sites, std::vector<double> alpha) {
  check_sites(*domain, sites);
  if (alpha.size() != sites.size()) throw InputError("one offset per site required");
  Tessellation t;
  t.cells = build_cells(*domain, sites, alpha);
  t.masses.resize(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) t.masses[i] = t.cells[i].empty() ? 0.0 : domain->mass(t.cells[i]);
  t.domain = std::move(domain);
  t.sites = std::move(sites);
  t.alpha = std::move(alpha);
  return t;
}

double mass_residual(const Tessellation& t, const std::vector<double>& lambda) {
  return max_abs_diff(t.masses, lambda);
}

Tessellation semidiscrete_weights(DomainPtr domain, std::vector<Point> sites, std::vector<double> lambda,
                                  const SolverOptions& options) {
  if (lambda.size() != sites.size()) throw InputError("one mass per site required");
  double total = 0.0;
  for (double l : lambda) {
    if (!(l > 0.0)) throw InputError("target masses must be positive");
    total += l;
  }
  if (std::abs(total - 1.0) > 1e-10) throw InputError("target masses must sum to 1");

  const std::size_t n = sites.size();
  std::vector<double> alpha(n);
  for (std::size_t i = 0; i < n; ++i) alpha[i] = -0.5 * norm2(sites[i]);
  Tessellation t = laguerre_cells(domain, sites, std::move(alpha));

  const double min_lambda = *std::min_element(lambda.begin(), lambda.end());
  const double min_mass = *std::min_element(t.masses.begin(), t.masses.end());
  const double floor = 0.5 * std::min(min_lambda, min_mass);

  int it = 0;
  for (; it < options.max_iterations; ++it) {
    const double res = mass_residual(t, lambda);
    if (res <= options.tol) {
      fix_gauge(t);
      t.iterations = it;
      t.residual = res;
      return t;
    }
    const auto d = newton_direction(*domain, t, lambda);
    if (d.empty()) break;
    const double norm_g = l2_diff(t.masses, lambda);
    double tau = 1.0;
    bool accepted = false;
    while (tau > 1e-10) {
      std::vector<double> a = t.alpha;
      for (std::size_t i = 0; i < n; ++i) a[i] += tau * d[i];
      Tessellation trial = laguerre_cells(domain, t.sites, std::move(a));
      const double mm = *std::min_element(trial.masses.begin(), trial.masses.end());
      if (mm >= floor && l2_diff(trial.masses, lambda) <= (1.0 - 0.5 * tau) * norm_g) {
        t = std::move(trial);
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) break;
  }
  if (it >= options.max_iterations) {
    if (mass_residual(t, lambda) <= options.tol) {
      fix_gauge(t);
      t.iterations = it;
      t.residual = mass_residual(t, lambda);
      return t;
    }
    throw SolverError("semi-discrete Newton reached its iteration cap", mass_residual(t, lambda), it);
  }
  t = gradient_ascent(domain, std::move(t), lambda, options, it);
  fix_gauge(t);
  return t;
}

}  // namespace entropic
