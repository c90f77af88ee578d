#include <cmath>

#include "doctest.h"
#include "entropic/error.hpp"
#include "entropic/transport.hpp"
#include "fixtures.hpp"

using namespace entropic;

namespace {

void check_atoms(const Measure& m, std::vector<double> xs, std::vector<double> ws, double tol = 1e-12) {
  const auto* d = m.get_if<DiscreteMeasure>();
  REQUIRE(d != nullptr);
  REQUIRE(d->atoms.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(std::abs(d->atoms[i].x - xs[i]) <= tol);
    CHECK(std::abs(d->weights[i] - ws[i]) <= tol);
  }
}

// inf{x : F(x) >= u} by bisection on a cdf callable.
template <class F>
double bisect_quantile(F cdf, double u) {
  double lo = 0.0;
  double hi = 1.0;
  if (cdf(0.0) >= u) return 0.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) >= u ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

TEST_CASE("distribution functions and right inverses") {
  const auto d = fx::interval();
  const auto f = cdf_1d(Measure::reference(d));
  CHECK(f(0.3) == doctest::Approx(0.3));
  const auto fd = cdf_1d(fx::atoms1d(d, {0.25}, {1.0}));
  CHECK(fd(0.2499) == 0.0);
  CHECK(fd(0.25) == 1.0);
  const auto f2 = cdf_1d(fx::atoms1d(d, {0.25, 0.75}, {0.5, 0.5}));
  CHECK(f2(0.25) == 0.5);
  CHECK(f2(0.7) == 0.5);
  CHECK(f2(0.75) == 1.0);

  const auto g2 = right_inverse_1d(f2);
  CHECK(g2(0.1) == 0.25);
  CHECK(g2(0.5) == 0.25);
  CHECK(g2(0.5000001) == 0.75);
  CHECK(g2(1.0) == 0.75);

  std::vector<double> xs;
  std::vector<double> ys;
  for (int k = 0; k <= 4096; ++k) {
    xs.push_back(k / 4096.0);
    ys.push_back(xs.back() * xs.back());
  }
  const auto sq = MonotoneFunction::from_samples(xs, ys);
  const auto root = right_inverse_1d(sq);
  for (double y : {0.01, 0.2, 0.5, 0.9}) CHECK(root(y) == doctest::Approx(std::sqrt(y)).epsilon(1e-5));
  const auto back = right_inverse_1d(root);
  for (double x : {0.1, 0.33, 0.8}) CHECK(back(x) == doctest::Approx(sq(x)));
}

TEST_CASE("interval conjugates") {
  const auto d = fx::interval();
  const Measure ref = conjugate_measure_1d(Measure::reference(d));
  const auto& line = *ref.get_if<LineMeasure>();
  REQUIRE(line.slabs().size() == 1);
  CHECK(line.slabs()[0].a == 0.0);
  CHECK(line.slabs()[0].b == 1.0);

  const Measure mu = fx::atoms1d(d, {0.25, 0.75}, {0.5, 0.5});
  const Measure nu = conjugate_measure_1d(mu);
  check_atoms(nu, {0.0, 0.5, 1.0}, {0.25, 0.5, 0.25});
  check_atoms(conjugate_measure_1d(nu), {0.25, 0.75}, {0.5, 0.5});

  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 1 + rng.index(6);
    std::vector<double> xs(k);
    for (auto& x : xs) x = rng.uniform();
    const Measure m = fx::atoms1d(d, xs, fx::simplex(rng, k));
    const Measure mcc = conjugate_measure_1d(conjugate_measure_1d(m));
    const auto& a = *m.get_if<DiscreteMeasure>();
    const auto& b = *mcc.get_if<DiscreteMeasure>();
    REQUIRE(a.atoms.size() == b.atoms.size());
    std::vector<std::pair<double, double>> pa;
    std::vector<std::pair<double, double>> pb;
    for (std::size_t i = 0; i < k; ++i) {
      pa.push_back({a.atoms[i].x, a.weights[i]});
      pb.push_back({b.atoms[i].x, b.weights[i]});
    }
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(std::abs(pa[i].first - pb[i].first) <= 1e-12);
      CHECK(std::abs(pa[i].second - pb[i].second) <= 1e-12);
    }
  }
}

TEST_CASE("circle conjugates") {
  const auto c = fx::circle();
  check_atoms(conjugate_measure_1d(fx::atoms1d(c, {0.0, 0.5}, {0.3, 0.7})), {0.15, 0.85}, {0.5, 0.5});

  const Measure mixed = Measure::piecewise(c, LineMeasure({{0.0, 0.4}}, {{0.0, 1.0, 0.6}}));
  const Measure conj = conjugate_measure_1d(mixed);
  const auto& out = *conj.get_if<LineMeasure>();
  CHECK(out.atoms().empty());
  REQUIRE(out.slabs().size() == 1);
  CHECK(out.slabs()[0].a == doctest::Approx(0.2));
  CHECK(out.slabs()[0].b == doctest::Approx(0.8));
  CHECK(out.density(0.5) == doctest::Approx(1.0 / 0.6));

  const auto bumpy = make_domain(Domain::circle().with_density({1.0, 2.0}, 2));
  CHECK_THROWS_AS(conjugate_measure_1d(fx::atoms1d(bumpy, {0.5}, {1.0})), UnsupportedError);
}

TEST_CASE("nonuniform reference measure on the interval") {
  const auto d = make_domain(Domain::interval().with_density({1.0, 3.0, 0.5, 2.0}, 4));
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Atom1D> atoms;
    std::vector<Slab> slabs;
    const auto w = fx::simplex(rng, 4);
    atoms.push_back({rng.uniform(), w[0]});
    atoms.push_back({rng.uniform(), w[1]});
    const double a = 0.5 * rng.uniform();
    slabs.push_back({a, a + 0.3, w[2]});
    slabs.push_back({0.85, 0.95, w[3]});
    const LineMeasure mu(atoms, slabs);
    const LineMeasure nu = to_line_measure(conjugate_measure_1d(Measure::piecewise(d, mu)));
    // Oracle: F_nu(y) = F_m(Q_mu(F_m(y))) evaluated by bisection.
    for (int k = 0; k < 50; ++k) {
      const double y = rng.uniform();
      const double q = bisect_quantile([&](double x) { return mu.cdf(x); }, d->cdf(y));
      const double oracle = d->cdf(q);
      const double got = nu.cdf(y);
      const double got_left = nu.cdf_left(y);
      CHECK(oracle >= got_left - 1e-9);
      CHECK(oracle <= got + 1e-9);
    }
    const LineMeasure back = to_line_measure(conjugate_measure_1d(Measure::piecewise(d, nu)));
    for (double x : {0.1, 0.37, 0.6, 0.9}) CHECK(std::abs(back.cdf(x) - mu.cdf(x)) <= 1e-9);
  }
}

TEST_CASE("density reciprocity") {
  const auto d = fx::interval();
  CHECK(density_reciprocity_check(Measure::grid_density(build_grid(d, 257), std::vector<double>(257, 1.0))) <= 1e-12);

  auto smooth = [&](int n) {
    const auto g = build_grid(d, n);
    std::vector<double> eta;
    for (const auto& x : g->nodes) eta.push_back(2.0 + std::sin(2 * M_PI * x.x));
    return density_reciprocity_check(Measure::grid_density(g, eta));
  };
  const double r1 = smooth(2048);
  const double r2 = smooth(4096);
  CHECK(r1 <= 5e-2);
  CHECK(r2 <= 0.6 * r1);

  const auto g = build_grid(d, 1001);
  std::vector<double> step;
  for (const auto& x : g->nodes) step.push_back(x.x < 0.5 ? 1.5 : 0.5);
  const Measure mu = Measure::grid_density(g, step);
  const auto nu = to_line_measure(conjugate_measure_1d(mu));
  CHECK(nu.density(0.3) == doctest::Approx(1.0 / 1.5).epsilon(1e-3));
  CHECK(nu.density(0.9) == doctest::Approx(1.0 / 0.5).epsilon(1e-3));

  std::vector<double> zero(1001, 1.0);
  zero[500] = 0.0;
  CHECK_THROWS_AS(density_reciprocity_check(Measure::grid_density(g, zero)), PreconditionError);
}

TEST_CASE("1D Brenier maps push m forward") {
  const auto d = fx::interval();
  const auto g = build_grid(d, 1001);
  const Measure mu = fx::atoms1d(d, {0.2, 0.6}, {0.3, 0.7});
  const Grid1DMap map = brenier_map_1d(mu, g);
  for (std::size_t i = 1; i < map.values.size(); ++i) CHECK(map.values[i] >= map.values[i - 1]);
  const Partition p = Partition::from_cuts(d, {0.4});
  const auto pushed = coarse_grain(pushforward(map), p);
  // Direct transport of the reference weights: nodes with F_m(x) <= 0.3 go left.
  const auto w = reference_weights(*g);
  double left = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (g->nodes[i].x <= 0.3) left += w[i];
  CHECK(std::abs(pushed[0] - left) <= 1e-8);

  const auto c = fx::circle();
  const auto gc = build_grid(c, 1000);
  const Grid1DMap cm = brenier_map_1d(fx::atoms1d(c, {0.0, 0.5}, {0.3, 0.7}), gc);
  int jumps = 0;
  for (std::size_t i = 0; i < cm.values.size(); ++i)
    if (cm.values[i] != cm.values[(i + 1) % cm.values.size()]) ++jumps;
  CHECK(jumps == 2);
}

TEST_CASE("discrete Brenier maps and 2D conjugates") {
  const auto d = fx::square();
  const auto single = brenier_map_discrete(Measure::discrete(d, {{0.5, 0.5}}, {1.0}));
  Rng rng(6);
  for (int k = 0; k < 100; ++k) CHECK(apply(single.map, d->sample(rng)) == Point{0.5, 0.5});

  const Measure one = conjugate_measure_2d(Measure::discrete(d, {{0.5, 0.5}}, {1.0}), 4000, rng);
  for (const auto& p : one.get_if<EmpiricalMeasure>()->points) {
    const bool corner = (p.x == 0.0 || p.x == 1.0) && (p.y == 0.0 || p.y == 1.0);
    CHECK(corner);
  }

  const Measure two_nu = Measure::discrete(d, {{0.25, 0.5}, {0.75, 0.5}}, {0.5, 0.5});
  const auto b = brenier_map_discrete(two_nu);
  for (int k = 0; k < 100; ++k) {
    const Point x = d->sample(rng);
    CHECK(apply(b.map, x) == (x.x < 0.5 ? Point{0.25, 0.5} : Point{0.75, 0.5}));
  }
  const Measure cloud = conjugate_measure_2d(*b.tessellation, 100000, rng);
  std::size_t inside = 0;
  for (const auto& p : cloud.get_if<EmpiricalMeasure>()->points) {
    for (const auto& cell : b.tessellation->cells)
      if (contains(cell, p, -1e-9)) ++inside;
  }
  CHECK(inside <= 100);

  // Monotonicity of the Laguerre assignment.
  Rng r2(8);
  std::vector<Point> z;
  for (int k = 0; k < 12; ++k) z.push_back(d->sample(r2));
  const auto t = brenier_map_discrete(Measure::discrete(d, z, fx::simplex(r2, 12, 0.02)));
  for (int k = 0; k < 500; ++k) {
    const Point x = d->sample(r2);
    const Point y = d->sample(r2);
    CHECK(dot(apply(t.map, x) - apply(t.map, y), x - y) >= -1e-12);
  }
  const auto pushed = pushforward(t.map);
  CHECK(pushed.get_if<DiscreteMeasure>()->atoms.size() == 12);
}
