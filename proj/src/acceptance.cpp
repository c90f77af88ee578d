#include "entropic/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>

#include "entropic/conjugation.hpp"
#include "entropic/dirichlet.hpp"
#include "entropic/entropic.hpp"
#include "entropic/error.hpp"
#include "entropic/laguerre.hpp"
#include "entropic/metrics.hpp"
#include "entropic/transport.hpp"

namespace entropic {

namespace {

struct Outcome {
  bool pass = true;
  double statistic = 0.0;
  double threshold = 0.0;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Measure atoms1d(DomainPtr d, const std::vector<double>& xs, const std::vector<double>& ws) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back({x, 0.0});
  return Measure::discrete(std::move(d), std::move(pts), ws);
}

std::vector<double> random_simplex(Rng& rng, std::size_t n, double floor) {
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& v : w) {
    v = -std::log(rng.uniform());
    s += v;
  }
  const double rest = 1.0 - floor * static_cast<double>(n);
  for (auto& v : w) v = floor + rest * v / s;
  return w;
}

// -min_k [d(x, c_k)^2 / 2 + a_k]: c-convex and D-Lipschitz.
Potential random_c_convex(Rng& rng, const GridPtr& g) {
  const Domain& d = *g->domain;
  std::vector<Point> centers;
  std::vector<double> offs;
  for (int k = 0; k < 8; ++k) {
    centers.push_back(d.sample(rng));
    offs.push_back(0.2 * rng.uniform());
  }
  std::vector<double> v(g->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double best = 1e300;
    for (std::size_t k = 0; k < centers.size(); ++k) {
      const double r = distance(d, g->nodes[i], centers[k]);
      best = std::min(best, 0.5 * r * r + offs[k]);
    }
    v[i] = -best;
  }
  return Potential::make(g, v);
}

MonotoneFunction random_monotone(Rng& rng, int n) {
  std::vector<double> xs(n + 1);
  std::vector<double> inc(n);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    // Occasional flat stretches and steep steps.
    const double u = rng.uniform();
    inc[k] = u < 0.1 ? 0.0 : (u > 0.98 ? 50.0 * rng.uniform() : rng.uniform());
    total += inc[k];
  }
  std::vector<double> ys(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) xs[k] = static_cast<double>(k) / n;
  for (int k = 0; k < n; ++k) ys[k + 1] = std::min(1.0, ys[k] + inc[k] / total);
  ys[n] = 1.0;
  return MonotoneFunction::from_samples(xs, ys);
}

Outcome involution_bound(const AcceptanceOptions& o) {
  Outcome out;
  out.threshold = 1.0;
  Rng rng(o.seed);
  for (auto kind : {DomainKind::kInterval, DomainKind::kCircle}) {
    const auto d = make_domain(kind == DomainKind::kInterval ? Domain::interval() : Domain::circle());
    const auto g = build_grid(d, 1000);
    const double bound = 4.0 * diameter(*d) * g->eps;
    for (int k = 0; k < 50; ++k) {
      Potential phi = random_c_convex(rng, g);
      const Potential cc = c_transform(c_transform(phi));
      if (o.canary)
        for (auto& v : phi.values) v = -v;
      double r = 0.0;
      for (std::size_t i = 0; i < phi.size(); ++i) r = std::max(r, std::abs(cc.values[i] - phi.values[i]));
      out.statistic = std::max(out.statistic, r / bound);
    }
  }
  out.pass = out.statistic <= out.threshold;
  out.detail = fmt("100 potentials, n=1000; max ||CC(phi)-phi|| / (4 D eps) = %.3g", out.statistic);
  return out;
}

Outcome circle_closed_form(const AcceptanceOptions& o) {
  Outcome out;
  out.threshold = 1e-12;
  Rng rng(o.seed + 2);
  const auto c = make_domain(Domain::circle());
  int configs = 0;
  for (int k : {2, 3, 5}) {
    for (int rep = 0; rep < 20; ++rep, ++configs) {
      std::vector<double> xs(k);
      for (auto& x : xs) x = rng.uniform();
      std::sort(xs.begin(), xs.end());
      const auto alpha = random_simplex(rng, k, 0.01);
      const Measure mu = conjugate_measure_1d(atoms1d(c, xs, alpha));
      const auto* d = mu.get_if<DiscreteMeasure>();
      if (!d || static_cast<int>(d->atoms.size()) != k) {
        out.statistic = 1.0;
        continue;
      }
      std::vector<std::size_t> ord(k);
      std::iota(ord.begin(), ord.end(), 0);
      std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return d->atoms[a].x < d->atoms[b].x; });
      std::vector<double> ys(k);
      std::vector<double> beta(k);
      for (int i = 0; i < k; ++i) {
        ys[i] = d->atoms[ord[i]].x;
        beta[i] = d->weights[ord[i]];
      }
      // Best cyclic alignment of (beta_j, gap_j) against (|x_{i+1}-x_i|, alpha_{i+1}).
      double best = 1e300;
      for (int s = 0; s < k; ++s) {
        double err = 0.0;
        for (int i = 0; i < k; ++i) {
          const int j = (i + s) % k;
          const double xgap = i + 1 < k ? xs[i + 1] - xs[i] : 1.0 - xs[k - 1] + xs[0];
          const double ygap = j + 1 < k ? ys[j + 1] - ys[j] : 1.0 - ys[k - 1] + ys[0];
          err = std::max(err, std::abs(beta[j] - xgap));
          err = std::max(err, std::abs(ygap - alpha[(i + 1) % k]));
        }
        best = std::min(best, err);
      }
      out.statistic = std::max(out.statistic, best);
    }
  }
  out.pass = out.statistic <= out.threshold;
  out.detail = fmt("%.0f configurations (k = 2, 3, 5); max deviation %.3g", configs, out.statistic);
  return out;
}

Outcome interval_fixture(const AcceptanceOptions& o) {
  Outcome out;
  out.threshold = 1e-12;
  const auto d = make_domain(Domain::interval());
  const Measure mu = atoms1d(d, {0.25, 0.75}, {0.5, 0.5});
  const Measure c = conjugate_measure_1d(mu);
  const auto* a = c.get_if<DiscreteMeasure>();
  std::vector<double> ex{0.0, 0.5, 1.0};
  std::vector<double> ew{0.25, 0.5, 0.25};
  if (o.canary)
    for (auto& x : ex) x = -x;
  if (!a || a->atoms.size() != 3) {
    out.pass = false;
    out.statistic = 1.0;
    out.detail = "conjugate is not a three-atom measure";
    return out;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    out.statistic = std::max(out.statistic, std::abs(a->atoms[i].x - ex[i]));
    out.statistic = std::max(out.statistic, std::abs(a->weights[i] - ew[i]));
  }
  const Measure back = conjugate_measure_1d(c);
  const auto* b = back.get_if<DiscreteMeasure>();
  const auto* m0 = mu.get_if<DiscreteMeasure>();
  bool exact = b && b->atoms.size() == 2;
  for (std::size_t i = 0; exact && i < 2; ++i)
    exact = b->atoms[i].x == m0->atoms[i].x && b->weights[i] == m0->weights[i];
  out.pass = out.statistic <= out.threshold && exact;
  out.detail = fmt("max atom/weight deviation %.3g; double conjugation exact: %s", out.statistic) + (exact ? "yes" : "no");
  return out;
}

Outcome entropy_duality(const AcceptanceOptions&) {
  Outcome out;
  out.threshold = 2e-2;
  const auto d = make_domain(Domain::interval());
  std::vector<std::pair<const char*, std::function<double(double)>>> dens{
      {"2+sin", [](double x) { return 2.0 + std::sin(2 * M_PI * x); }},
      {"exp", [](double x) { return std::exp(1.5 * x); }},
      {"bump", [](double x) { return 0.3 + std::exp(-40.0 * (x - 0.4) * (x - 0.4)); }}};
  std::string detail;
  for (const auto& [name, f] : dens) {
    double gap[2];
    for (int r = 0; r < 2; ++r) {
      auto g = build_grid(d, r == 0 ? 2048 : 4096);
      std::vector<double> v;
      for (const auto& p : g->nodes) v.push_back(f(p.x));
      gap[r] = entropy_duality_gap(Measure::grid_density(g, v));
    }
    const bool ok = gap[0] <= 2e-2 && gap[1] <= 0.6 * gap[0];
    out.pass = out.pass && ok;
    out.statistic = std::max(out.statistic, gap[0]);
    detail += std::string(detail.empty() ? "" : "; ") + name + fmt(" %.3g -> %.3g", gap[0], gap[1]);
  }
  out.detail = "gap n=2048 -> n=4096: " + detail;
  return out;
}

Outcome semidiscrete(const AcceptanceOptions& o) {
  Outcome out;
  out.threshold = 1e-6;
  const auto sq = make_domain(Domain::unit_square());
  int worst_it = 0;
  for (int rep = 0; rep < 5; ++rep) {
    Rng rng(o.seed + 5 + rep);
    std::vector<Point> sites;
    for (int k = 0; k < 20; ++k) sites.push_back(sq->sample(rng));
    const auto lambda = random_simplex(rng, 20, 0.005);
    try {
      SolverOptions so;
      so.tol = 1e-9;
      const auto t = semidiscrete_weights(sq, sites, lambda, so);
      out.statistic = std::max(out.statistic, mass_residual(t, lambda));
      worst_it = std::max(worst_it, t.iterations);
    } catch (const SolverError& e) {
      out.statistic = std::max(out.statistic, e.residual());
      worst_it = std::max(worst_it, e.iterations());
    }
  }
  const auto t = semidiscrete_weights(sq, {{0.25, 0.5}, {0.75, 0.5}}, {0.5, 0.5});
  const auto w = t.power_weights();
  double sym = std::max(std::abs(w[0]), std::abs(w[1]));
  for (const auto& v : t.cells[0].vertices) sym = std::max(sym, std::min(std::abs(v.x - 0.5), std::abs(v.x)));
  out.pass = out.statistic <= out.threshold && worst_it <= 100 && sym <= 1e-10;
  out.detail = fmt("5 x 20 sites: max residual %.3g, max iterations %.0f; two-site power weights/bisector %.3g",
                   out.statistic, worst_it, sym);
  return out;
}

Outcome hole_law(const AcceptanceOptions& o) {
  Outcome out;
  out.threshold = 2e-3;
  const auto sq = make_domain(Domain::unit_square());
  EntropicOptions opt;
  opt.cloud_points = 100000;
  double size_err = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto s = sample_entropic(1.0, sq, Rng::derive(o.seed + 6, k), Truncation::terms(10), opt);
    for (double p : hole_report(s, 1e-9)) out.statistic = std::max(out.statistic, p);
    for (const auto& h : s.holes) size_err = std::max(size_err, std::abs(h.size - h.weight));
  }
  out.pass = out.statistic <= out.threshold && size_err <= 1e-6;
  out.detail = fmt("20 samples, 1e5 points: max hole probe %.3g, max |m(U)-lambda| %.3g", out.statistic, size_err);
  return out;
}

Outcome dirichlet_marginals(const AcceptanceOptions& o) {
  Outcome out;
  out.threshold = 1e-3;
  const auto d = make_domain(Domain::interval());
  const Partition two = Partition::from_cuts(d, {0.3});
  const Partition three = Partition::from_cuts(d, {0.2, 0.5});
  std::vector<double> x1, y12, y1, y2;
  for (int k = 0; k < 5000; ++k) {
    Rng rng(Rng::derive(o.seed + 7, k));
    x1.push_back(coarse_grain(sample_dirichlet_ferguson(2.0, d, rng).nu, two)[0]);
    Rng rng3(Rng::derive(o.seed + 70000, k));
    const auto y = coarse_grain(sample_dirichlet_ferguson(2.0, d, rng3).nu, three);
    y1.push_back(y[0]);
    y12.push_back(y[0] + y[1]);
    y2.push_back(y[1]);
  }
  const double p1 = ks_test(x1, [](double x) { return beta_cdf(x, 0.6, 1.4); }).p_value;
  const double p2 = ks_test(y12, [](double x) { return beta_cdf(x, 1.0, 1.0); }).p_value;
  const double p3 = ks_test(y1, [](double x) { return beta_cdf(x, 0.4, 1.6); }).p_value;
  // Blocks of equal m-mass share one law across partitions.
  const double p4 = ks_test_two_sample(x1, y2).p_value;
  out.statistic = std::min({p1, p2, p3, p4});
  out.pass = out.statistic >= out.threshold;
  out.detail = fmt("KS p: (0.3,0.7) block %.3g; ", p1) + fmt("three blocks: merged %.3g, first %.3g, ", p2, p3) +
               fmt("mass-0.3 blocks two-sample %.3g", p4);
  return out;
}

Outcome stick_moments(const AcceptanceOptions& o) {
  Outcome out;
  out.threshold = 5.0;
  Rng rng(o.seed + 8);
  for (double beta : {0.5, 1.0, 4.0}) {
    std::vector<std::vector<double>> lam(8, std::vector<double>());
    for (auto& v : lam) v.reserve(100000);
    for (int s = 0; s < 100000; ++s) {
      const auto st = sample_stick_breaking(beta, rng, Truncation::terms(8));
      for (int k = 0; k < 8; ++k) lam[k].push_back(st.lambda[k]);
    }
    for (int k = 0; k < 8; ++k) {
      const double claim = std::pow(beta / (1.0 + beta), k + 1) / beta;
      const auto r = moment_check(lam[k], claim, 0.25, 5.0);
      out.statistic = std::max(out.statistic, std::abs(r.statistic));
      out.pass = out.pass && r.pass;
    }
  }
  out.detail = fmt("beta in {0.5, 1, 4}, k <= 8, 1e5 samples: max |z| %.3g", out.statistic);
  return out;
}

Outcome isometries(const AcceptanceOptions& o) {
  Outcome out;
  out.threshold = 1e-6;
  Rng rng(o.seed + 9);
  const auto d = make_domain(Domain::interval());
  const double eps = build_grid(d, 4096)->eps;
  double l1_err = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto g1 = random_monotone(rng, 4096);
    const auto g2 = random_monotone(rng, 4096);
    const double w = wasserstein_1d(pushforward_1d(g1, d), pushforward_1d(g2, d));
    out.statistic = std::max(out.statistic, std::abs(w * w - l2_distance_sq(g1, g2)));
    l1_err = std::max(l1_err, std::abs(l1_distance(g1, g2) - l1_distance(conjugate_map_1d(g1), conjugate_map_1d(g2))));
  }
  out.pass = out.statistic <= out.threshold && l1_err <= 5.0 * eps;
  out.detail = fmt("50 pairs, n=4096: max |d_W^2 - L2^2| %.3g, max L1 isometry defect %.3g (5 eps = %.3g)",
                   out.statistic, l1_err, 5.0 * eps);
  return out;
}

Outcome continuity(const AcceptanceOptions&) {
  Outcome out;
  out.threshold = 1e-3;
  const auto d = make_domain(Domain::interval());
  const Measure limit = atoms1d(d, {0.25}, {1.0});
  const std::vector<int> ns{10, 30, 100, 300, 1000};
  std::vector<Measure> a, b, c;
  for (int n : ns) {
    a.push_back(atoms1d(d, {0.25, 0.75}, {1.0 - 1.0 / n, 1.0 / n}));
    b.push_back(limit);
    c.push_back(Measure::piecewise(d, LineMeasure({}, {{0.25 - 1.0 / n, 0.25 + 1.0 / n, 1.0}})));
  }
  std::string detail;
  const char* names[] = {"atom drift", "constant", "mollified atom"};
  int idx = 0;
  for (const auto* seq : {&a, &b, &c}) {
    const auto dist = conjugation_continuity_probe(*seq, limit);
    bool mono = true;
    for (std::size_t k = 1; k < dist.size(); ++k) mono = mono && dist[k] <= dist[k - 1];
    const bool ok = mono && dist.back() < out.threshold;
    out.pass = out.pass && ok;
    out.statistic = std::max(out.statistic, dist.back());
    detail += std::string(detail.empty() ? "" : "; ") + names[idx++] + fmt(" %.3g at n=1000", dist.back()) +
              (ok ? "" : " (FAIL)");
  }
  out.detail = detail;
  return out;
}

Outcome coupling_bound(const AcceptanceOptions& o) {
  Outcome out;
  out.threshold = 1e-9;
  Rng rng(o.seed + 11);
  // 1D: exact distance against the coupling of the two maps.
  const auto d = make_domain(Domain::interval());
  for (int k = 0; k < 20; ++k) {
    const auto g1 = random_monotone(rng, 512);
    const auto g2 = random_monotone(rng, 512);
    const double w = wasserstein_1d(pushforward_1d(g1, d), pushforward_1d(g2, d));
    out.statistic = std::max(out.statistic, w - std::sqrt(l2_distance_sq(g1, g2)));
  }
  // 2D: assignment distance of the two image clouds against the coupling bound.
  const auto sq = make_domain(Domain::unit_square());
  const auto grid = build_grid(sq, 16);
  std::vector<TransportMap> maps;
  maps.push_back(GridArgmaxMap{grid, grid->nodes});
  maps.push_back(GridArgmaxMap{grid, std::vector<Point>(grid->size(), Point{0.3, 0.6})});
  for (int k = 0; k < 4; ++k) {
    std::vector<Point> sites;
    for (int j = 0; j < 6; ++j) sites.push_back(sq->sample(rng));
    auto t = std::make_shared<const Tessellation>(semidiscrete_weights(sq, sites, random_simplex(rng, 6, 0.02)));
    maps.push_back(LaguerreAssign{t});
    std::vector<Point> targets;
    for (const auto& p : grid->nodes) targets.push_back(entropic::apply(maps.back(), p));
    maps.push_back(GridArgmaxMap{grid, targets});
  }
  int pairs = 20;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (std::size_t j = i; j < maps.size(); ++j, ++pairs) {
      std::vector<Point> a, b;
      for (const auto& p : grid->nodes) {
        a.push_back(entropic::apply(maps[i], p));
        b.push_back(entropic::apply(maps[j], p));
      }
      const double est = wasserstein_empirical_2d(a, b);
      const double upper = wasserstein_2d_upper(maps[i], maps[j], grid);
      out.statistic = std::max(out.statistic, est - upper);
    }
  }
  out.pass = out.statistic <= out.threshold;
  out.detail = fmt("%.0f fixture pairs; max (estimate - bound) %.3g", pairs, out.statistic);
  return out;
}

struct Entry {
  const char* name;
  double budget;
  Outcome (*run)(const AcceptanceOptions&);
};

const Entry kEntries[kCriteria] = {
    {"involution_bound", 30, involution_bound},       {"circle_closed_form", 1, circle_closed_form},
    {"interval_fixture", 1, interval_fixture},        {"entropy_duality", 10, entropy_duality},
    {"semidiscrete_solver", 60, semidiscrete},        {"hole_law", 300, hole_law},
    {"dirichlet_marginals", 60, dirichlet_marginals}, {"stick_moments", 60, stick_moments},
    {"isometries_1d", 30, isometries},                {"continuity_probe", 10, continuity},
    {"coupling_bound", 60, coupling_bound},
};

}  // namespace

std::string criterion_name(int id) {
  if (id < 1 || id > kCriteria) throw InputError("no criterion " + std::to_string(id));
  return kEntries[id - 1].name;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  criterion_name(id);
  const Entry& e = kEntries[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = e.name;
  r.budget_seconds = e.budget;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome o = e.run(options);
    r.pass = o.pass;
    r.statistic = o.statistic;
    r.threshold = o.threshold;
    r.detail = o.detail;
  } catch (const std::exception& ex) {
    r.pass = false;
    r.detail = std::string("error: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds > r.budget_seconds) {
    r.pass = false;
    r.detail += " (over time budget)";
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only, const AcceptanceOptions& options) {
  std::vector<int> ids = only;
  if (ids.empty()) {
    ids.resize(kCriteria);
    std::iota(ids.begin(), ids.end(), 1);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id, options));
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s %2d %-20s [%.2fs / %.0fs] ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.budget_seconds);
  return head + r.detail;
}

TestReport to_report(const CriterionResult& r, std::uint64_t seed) {
  TestReport t;
  t.name = std::to_string(r.id) + "_" + r.name;
  t.statistic = r.statistic;
  t.threshold = r.threshold;
  t.p_value = std::numeric_limits<double>::quiet_NaN();
  t.pass = r.pass;
  t.sample_size = 0;
  t.seed = seed;
  t.detail = r.detail;
  return t;
}

}  // namespace entropic
