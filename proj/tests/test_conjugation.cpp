#include <cmath>

#include "doctest.h"
#include "entropic/conjugation.hpp"
#include "entropic/error.hpp"
#include "fixtures.hpp"

using namespace entropic;

namespace {

double sup_diff(const Potential& a, const Potential& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a.values[i] - b.values[i]));
  return r;
}

// Lipschitz potential with constant at most `lip` (in the domain metric).
Potential random_lipschitz(Rng& rng, const GridPtr& g, double lip) {
  const Domain& d = *g->domain;
  std::vector<Point> centers;
  std::vector<double> offs;
  for (int k = 0; k < 6; ++k) {
    centers.push_back(d.sample(rng));
    offs.push_back(rng.uniform());
  }
  std::vector<double> v(g->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double best = 1e300;
    for (std::size_t k = 0; k < centers.size(); ++k)
      best = std::min(best, offs[k] + lip * distance(d, g->nodes[i], centers[k]));
    v[i] = best;
  }
  return Potential::make(g, v);
}

// c-convex in the continuum: -min_k [d(x, c_k)^2 / 2 + a_k] with off-grid centers.
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

}  // namespace

TEST_CASE("c-transform of constants") {
  for (auto d : {fx::interval(), fx::circle(), fx::square()}) {
    const auto g = build_grid(d, d->is_one_dimensional() ? 101 : 8);
    CHECK(sup_diff(c_transform(Potential::constant(g, 0.0)), Potential::constant(g, 0.0)) == 0.0);
    CHECK(sup_diff(c_transform(Potential::constant(g, 2.5)), Potential::constant(g, -2.5)) == 0.0);
  }
}

TEST_CASE("circle: transform of a squared-distance bump") {
  const auto d = fx::circle();
  const auto g = build_grid(d, 400);
  std::vector<double> v;
  for (const auto& x : g->nodes) {
    const double r = raw_distance(DomainKind::kCircle, {0, 0}, x);
    v.push_back(0.5 * (0.25 - r * r));
  }
  const Potential phic = c_transform(Potential::make(g, v));
  // Oracle: brute force at doubled resolution, compared at shared nodes.
  const auto g2 = build_grid(d, 800);
  std::vector<double> v2;
  for (const auto& x : g2->nodes) {
    const double r = raw_distance(DomainKind::kCircle, {0, 0}, x);
    v2.push_back(0.5 * (0.25 - r * r));
  }
  const Potential fine = c_transform_brute(Potential::make(g2, v2)).value;
  const double floor = discretization_floor(*g);
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(std::abs(phic.values[i] - fine.values[2 * i]) <= floor);
  // Shape: -d(1/2, y)^2 / 2 plus a constant.
  const double c = phic.values[0] + 0.5 * 0.25;
  for (std::size_t i = 0; i < g->size(); ++i) {
    const double r = raw_distance(DomainKind::kCircle, {0.5, 0}, g->nodes[i]);
    CHECK(std::abs(phic.values[i] - (-0.5 * r * r + c)) <= floor);
  }
}

TEST_CASE("envelope sweep equals the direct scan") {
  Rng rng(5);
  for (int n : {2, 3, 17, 256, 2048}) {
    const auto g = build_grid(fx::interval(), n);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> v(g->size());
      for (auto& x : v) x = trial == 4 ? 0.0 : 3.0 * (rng.uniform() - 0.5);
      const Potential phi = Potential::make(g, v);
      const auto a = c_transform_brute(phi);
      const auto b = c_transform_interval(phi);
      CHECK(sup_diff(a.value, b.value) <= 1e-12);
    }
  }
}

TEST_CASE("involution, order reversal, shift, Lipschitz") {
  Rng rng(17);
  for (auto d : {fx::interval(), fx::circle()}) {
    const auto g = build_grid(d, 300);
    const double D = diameter(*d);
    for (int trial = 0; trial < 20; ++trial) {
      const Potential phi = random_lipschitz(rng, g, D);
      const Potential c1 = c_transform(phi);
      CHECK(involution_residual(c1) <= 2.0 * discretization_floor(*g));
      CHECK(involution_residual(random_c_convex(rng, g)) <= 2.0 * discretization_floor(*g));
      CHECK(lipschitz_ratio(c1) <= D + 1e-9);

      Potential bigger = phi;
      for (auto& x : bigger.values) x += rng.uniform();
      const Potential c2 = c_transform(bigger);
      for (std::size_t i = 0; i < g->size(); ++i) CHECK(c2.values[i] <= c1.values[i]);

      Potential shifted = phi;
      for (auto& x : shifted.values) x += 0.75;
      const Potential c3 = c_transform(shifted);
      for (std::size_t i = 0; i < g->size(); ++i) CHECK(c3.values[i] == doctest::Approx(c1.values[i] - 0.75).epsilon(1e-15));
    }
  }
}

TEST_CASE("c-convexity test") {
  const auto g = build_grid(fx::interval(), 201);
  const double floor = 2.0 * discretization_floor(*g);
  CHECK(is_c_convex(Potential::constant(g, 0.0), floor));
  CHECK_THROWS_AS(is_c_convex(Potential::constant(g, 0.0), 0.5 * floor), ConfigError);

  std::vector<double> v;
  for (const auto& x : g->nodes) v.push_back(-10.0 * x.x * x.x);
  const Potential bad = Potential::make(g, v);
  CHECK_FALSE(is_c_convex(bad, floor));

  Rng rng(2);
  std::vector<double> r(g->size());
  for (auto& x : r) x = rng.uniform();
  const Potential phic = c_transform(Potential::make(g, r));
  CHECK(is_c_convex(phic, floor));
  CHECK(involution_residual(phic) <= 1e-15);
}

TEST_CASE("normalization of potential classes") {
  const auto g = build_grid(fx::interval(), 1001);
  for (double v : normalize_class(Potential::constant(g, 5.0)).representative.values) CHECK(v == doctest::Approx(0.0));
  std::vector<double> x;
  for (const auto& p : g->nodes) x.push_back(p.x);
  const auto cls = normalize_class(Potential::make(g, x));
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(std::abs(cls.representative.values[i] - (x[i] - 0.5)) <= 1e-10);

  Rng rng(8);
  for (auto d : {fx::interval(), fx::circle(), fx::square()}) {
    const auto gg = build_grid(d, d->is_one_dimensional() ? 333 : 9);
    std::vector<double> v(gg->size());
    for (auto& t : v) t = 10.0 * rng.uniform();
    const auto once = normalize_class(Potential::make(gg, v)).representative;
    const auto twice = normalize_class(once).representative;
    CHECK(once.values == twice.values);
  }
}

TEST_CASE("Legendre-Fenchel transform") {
  const auto g = build_grid(fx::interval(), 501);
  const Potential quad = shift_quadratic(Potential::constant(g, 0.0), +1);
  const auto lf = legendre_fenchel(quad);
  for (std::size_t i = 1; i + 1 < g->size(); ++i) {
    const double y = g->nodes[i].x;
    CHECK(std::abs(lf.value.values[i] - 0.5 * y * y) <= g->eps * 1.0);
  }

  // Max of two affine pieces: psi(y) = max over the breakpoint and ends.
  const double a1 = 0.1;
  const double a2 = -0.15;
  std::vector<double> v;
  for (const auto& x : g->nodes) v.push_back(std::max(0.25 * x.x + a1, 0.75 * x.x + a2));
  const auto res = legendre_fenchel(Potential::make(g, v));
  const double xb = (a1 - a2) / 0.5;  // 0.5
  for (std::size_t j = 0; j < g->size(); ++j) {
    const double y = g->nodes[j].x;
    double oracle = -1e300;
    for (double x : {0.0, xb, 1.0}) oracle = std::max(oracle, x * y - std::max(0.25 * x + a1, 0.75 * x + a2));
    CHECK(res.value.values[j] == doctest::Approx(oracle).epsilon(1e-12));
    if (y > 0.26 && y < 0.74) CHECK(g->nodes[res.argmax[j]].x == doctest::Approx(xb));
  }

  const auto sq = build_grid(fx::square(), 8);
  const auto lf0 = legendre_fenchel(Potential::constant(sq, 0.0));
  for (std::size_t j = 0; j < sq->size(); ++j) {
    const Point y = sq->nodes[j];
    const double oracle = std::max({0.0, y.x, y.y, y.x + y.y});
    CHECK(std::abs(lf0.value.values[j] - oracle) <= sq->eps * diameter(*sq->domain));
  }

  CHECK_THROWS_AS(legendre_fenchel(Potential::constant(build_grid(fx::circle(), 10), 0.0)), UnsupportedError);
}

TEST_CASE("quadratic shift and the Euclidean identity") {
  const auto g = build_grid(fx::interval(), 257);
  const Potential up = shift_quadratic(Potential::constant(g, 0.0), +1);
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(up.values[i] == 0.5 * g->nodes[i].x * g->nodes[i].x);
  std::vector<double> neg;
  for (const auto& x : g->nodes) neg.push_back(-0.5 * x.x * x.x);
  for (double v : shift_quadratic(Potential::make(g, neg), +1).values) CHECK(v == 0.0);

  Rng rng(4);
  std::vector<double> r(g->size());
  for (auto& x : r) x = rng.uniform();
  const Potential phi = Potential::make(g, r);
  const Potential back = shift_quadratic(shift_quadratic(phi, +1), -1);
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(std::abs(back.values[i] - r[i]) <= 4e-16);

  const Potential via_lf = shift_quadratic(legendre_fenchel(shift_quadratic(phi, +1)).value, -1);
  CHECK(sup_diff(via_lf, c_transform(phi)) <= 2.0 * discretization_floor(*g));
  CHECK_THROWS_AS(shift_quadratic(Potential::constant(build_grid(fx::circle(), 10), 0.0), 1), UnsupportedError);
}
