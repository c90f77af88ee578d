#include "entropic/conjugation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entropic/error.hpp"

namespace entropic {

namespace {

// Lower convex hull of (xs[i], bs[i]) for strictly increasing xs. Points in
// the middle of collinear runs are dropped; they can only tie with the left
// end of their edge, which has the smaller index.
std::vector<std::size_t> lower_hull(const std::vector<double>& xs, const std::vector<double>& bs) {
  std::vector<std::size_t> h;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (h.size() >= 2) {
      const std::size_t a = h[h.size() - 2];
      const std::size_t b = h.back();
      const double cross = (xs[b] - xs[a]) * (bs[i] - bs[a]) - (bs[b] - bs[a]) * (xs[i] - xs[a]);
      if (cross > 0.0) break;
      h.pop_back();
    }
    h.push_back(i);
  }
  return h;
}

// argmin_i (bs[i] - q xs[i]) for each query q, queries nondecreasing.
std::vector<std::size_t> envelope_argmin(const std::vector<double>& xs, const std::vector<double>& bs,
                                         const std::vector<double>& queries) {
  const auto hull = lower_hull(xs, bs);
  std::vector<std::size_t> out(queries.size());
  std::size_t p = 0;
  for (std::size_t j = 0; j < queries.size(); ++j) {
    const double q = queries[j];
    while (p + 1 < hull.size() && bs[hull[p + 1]] - q * xs[hull[p + 1]] < bs[hull[p]] - q * xs[hull[p]]) ++p;
    out[j] = hull[p];
  }
  return out;
}

void require_euclidean(const Potential& phi, const char* what) {
  if (!phi.grid->domain->is_euclidean()) {
    throw UnsupportedError(std::string(what) + " is not defined on the circle; use c_transform");
  }
}

double half_sq(DomainKind kind, Point a, Point b) {
  const double d = raw_distance(kind, a, b);
  return 0.5 * d * d;
}

}  // namespace

Potential Potential::make(GridPtr grid, std::vector<double> values) {
  if (!grid) throw InputError("potential needs a grid");
  if (values.size() != grid->size()) throw InputError("potential length differs from grid size");
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("potential values must be finite");
  }
  return Potential{std::move(grid), std::move(values), false};
}

Potential Potential::constant(GridPtr grid, double value) {
  const std::size_t n = grid->size();
  return make(std::move(grid), std::vector<double>(n, value));
}

double discretization_floor(const Grid& grid) { return 2.0 * diameter(*grid.domain) * grid.eps; }

CTransform c_transform_brute(const Potential& phi) {
  const auto& nodes = phi.grid->nodes;
  const DomainKind kind = phi.grid->domain->kind();
  const std::size_t n = nodes.size();
  CTransform out{Potential{phi.grid, std::vector<double>(n), false}, std::vector<std::size_t>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = half_sq(kind, nodes[j], nodes[i]) + phi.values[i];
      if (c < best) {
        best = c;
        arg = i;
      }
    }
    out.value.values[j] = -best;
    out.argmin[j] = arg;
  }
  return out;
}

CTransform c_transform_interval(const Potential& phi) {
  if (phi.grid->domain->kind() != DomainKind::kInterval) {
    throw UnsupportedError("envelope sweep needs the interval");
  }
  const auto& nodes = phi.grid->nodes;
  const std::size_t n = nodes.size();
  std::vector<double> xs(n);
  std::vector<double> bs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = nodes[i].x;
    bs[i] = 0.5 * xs[i] * xs[i] + phi.values[i];
  }
  CTransform out{Potential{phi.grid, std::vector<double>(n), false}, envelope_argmin(xs, bs, xs)};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = out.argmin[j];
    out.value.values[j] = -(half_sq(DomainKind::kInterval, nodes[j], nodes[i]) + phi.values[i]);
  }
  return out;
}

CTransform c_transform_full(const Potential& phi) {
  if (phi.grid->domain->kind() == DomainKind::kInterval) return c_transform_interval(phi);
  return c_transform_brute(phi);
}

Potential c_transform(const Potential& phi) { return c_transform_full(phi).value; }

double involution_residual(const Potential& phi) {
  const Potential cc = c_transform(c_transform(phi));
  double r = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) r = std::max(r, std::abs(cc.values[i] - phi.values[i]));
  return r;
}

bool is_c_convex(const Potential& phi, double tol) {
  const double floor = 2.0 * discretization_floor(*phi.grid);
  if (tol < floor * (1.0 - 1e-12)) {
    throw ConfigError("tolerance " + std::to_string(tol) + " is below the discretization floor " +
                      std::to_string(floor));
  }
  return involution_residual(phi) <= tol;
}

PotentialClass normalize_class(const Potential& phi) {
  const auto w = reference_weights(*phi.grid);
  double mean = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    mean += w[i] * phi.values[i];
    scale += w[i] * std::abs(phi.values[i]);
  }
  Potential out = phi;
  // A mean at the rounding level of the quadrature itself counts as zero.
  if (std::abs(mean) <= 64.0 * std::numeric_limits<double>::epsilon() * scale) return {out};
  for (double& v : out.values) v -= mean;
  return {out};
}

LegendreResult legendre_fenchel(const Potential& phi) {
  require_euclidean(phi, "legendre_fenchel");
  const auto& nodes = phi.grid->nodes;
  const std::size_t n = nodes.size();
  LegendreResult out{Potential{phi.grid, std::vector<double>(n), false}, std::vector<std::size_t>(n)};

  if (phi.grid->domain->kind() == DomainKind::kInterval) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = nodes[i].x;
    out.argmax = envelope_argmin(xs, phi.values, xs);
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        const double v = dot(nodes[i], nodes[j]) - phi.values[i];
        if (v > best) {
          best = v;
          out.argmax[j] = i;
        }
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = out.argmax[j];
    out.value.values[j] = dot(nodes[i], nodes[j]) - phi.values[i];
  }
  return out;
}

Potential shift_quadratic(const Potential& phi, int sign) {
  require_euclidean(phi, "shift_quadratic");
  if (sign != 1 && sign != -1) throw InputError("sign must be +1 or -1");
  Potential out{phi.grid, phi.values, false};
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values[i] += sign * 0.5 * norm2(phi.grid->nodes[i]);
  }
  return out;
}

double lipschitz_ratio(const Potential& phi, std::size_t max_nodes) {
  const Grid& g = *phi.grid;
  const DomainKind kind = g.domain->kind();
  const std::size_t n = g.size();
  double r = 0.0;
  auto pair = [&](std::size_t i, std::size_t j) {
    const double d = raw_distance(kind, g.nodes[i], g.nodes[j]);
    if (d > 0.0) r = std::max(r, std::abs(phi.values[i] - phi.values[j]) / d);
  };
  if (g.domain->is_one_dimensional()) {
    for (std::size_t i = 0; i + 1 < n; ++i) pair(i, i + 1);
    if (kind == DomainKind::kCircle && n > 2) pair(n - 1, 0);
    return r;
  }
  const std::size_t stride = std::max<std::size_t>(1, n / std::max<std::size_t>(1, max_nodes));
  for (std::size_t i = 0; i < n; i += stride)
    for (std::size_t j = i + stride; j < n; j += stride) pair(i, j);
  return r;
}

}  // namespace entropic
