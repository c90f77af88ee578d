#include <cmath>

#include "doctest.h"
#include "entropic/error.hpp"
#include "entropic/laguerre.hpp"
#include "fixtures.hpp"

using namespace entropic;

TEST_CASE("two symmetric sites split along the bisector") {
  const auto t = semidiscrete_weights(fx::square(), {{0.25, 0.5}, {0.75, 0.5}}, {0.5, 0.5});
  CHECK(t.masses[0] == doctest::Approx(0.5).epsilon(1e-12));
  for (double w : t.power_weights()) CHECK(std::abs(w) <= 1e-10);
  for (const auto& v : t.cells[0].vertices) CHECK(v.x <= 0.5 + 1e-12);
  for (const auto& v : t.cells[1].vertices) CHECK(v.x >= 0.5 - 1e-12);
  CHECK(t.alpha[0] == 0.0);
}

TEST_CASE("single site owns the domain") {
  const auto t = semidiscrete_weights(fx::square(), {{0.3, 0.6}}, {1.0});
  CHECK(area(t.cells[0]) == doctest::Approx(1.0));
  CHECK(t.masses[0] == doctest::Approx(1.0));
}

TEST_CASE("asymmetric masses move the cut") {
  const auto d = fx::square();
  const std::vector<Point> z{{0.25, 0.5}, {0.75, 0.5}};
  const auto t = semidiscrete_weights(d, z, {0.25, 0.75});
  // Oracle: bisection on alpha_2 until the first cell carries 0.25.
  double lo = -2.0;
  double hi = 2.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double m0 = laguerre_cells(d, z, {0.0, mid}).masses[0];
    (m0 > 0.25 ? lo : hi) = mid;
  }
  CHECK(t.alpha[1] == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-8));
  double cut = 0.0;
  for (const auto& v : t.cells[0].vertices) cut = std::max(cut, v.x);
  CHECK(cut == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("cells shrink monotonically as a competing offset grows") {
  const auto d = fx::square();
  const std::vector<Point> z{{0.25, 0.5}, {0.75, 0.5}};
  const auto bis = laguerre_cells(d, z, alpha_from_power_weights(z, {0.0, 0.0}));
  CHECK(bis.masses[0] == doctest::Approx(0.5));
  double prev = 2.0;
  for (double a : {-0.1, 0.0, 0.1}) {
    const double m0 = laguerre_cells(d, z, alpha_from_power_weights(z, {0.0, a})).masses[0];
    CHECK(m0 < prev);
    prev = m0;
  }
}

TEST_CASE("three symmetric sites in a disk-like polygon") {
  std::vector<Point> poly;
  for (int k = 0; k < 48; ++k) poly.push_back({std::cos(2 * M_PI * k / 48), std::sin(2 * M_PI * k / 48)});
  const auto d = make_domain(Domain::polygon(poly));
  std::vector<Point> z;
  for (int k = 0; k < 3; ++k) {
    const double a = M_PI / 2 + 2 * M_PI * k / 3;
    z.push_back({0.5 * std::cos(a), 0.5 * std::sin(a)});
  }
  const auto t = laguerre_cells(d, z, {0.0, 0.0, 0.0});
  CHECK(t.masses[0] == doctest::Approx(1.0 / 3).epsilon(1e-9));
  CHECK(t.masses[1] == doctest::Approx(1.0 / 3).epsilon(1e-9));
  CHECK(t.masses[2] == doctest::Approx(1.0 / 3).epsilon(1e-9));
}

TEST_CASE("twenty random sites reach 1e-6 and agree with Monte Carlo") {
  Rng rng(20);
  const auto d = fx::square();
  std::vector<Point> z;
  for (int k = 0; k < 20; ++k) z.push_back(d->sample(rng));
  const auto lambda = fx::simplex(rng, 20, 0.01);
  const auto t = semidiscrete_weights(d, z, lambda);
  CHECK(mass_residual(t, lambda) <= 1e-6);
  CHECK(t.iterations <= 100);

  double total_area = 0.0;
  for (const auto& c : t.cells) total_area += area(c);
  CHECK(std::abs(total_area - 1.0) <= 1e-9);

  const int n = 1000000;
  std::vector<int> counts(20, 0);
  Rng mc(99);
  for (int k = 0; k < n; ++k) ++counts[t.cell_of(d->sample(mc))];
  for (int i = 0; i < 20; ++i) {
    const double p = counts[i] / static_cast<double>(n);
    const double se = std::sqrt(lambda[i] * (1 - lambda[i]) / n);
    CHECK(std::abs(p - lambda[i]) <= 5 * se);
  }
  // Cells agree with the argmax definition on sampled points.
  for (int k = 0; k < 2000; ++k) {
    const Point x = d->sample(mc);
    CHECK(contains(t.cells[t.cell_of(x)], x, 1e-12));
  }
}

TEST_CASE("nonuniform reference density") {
  const auto d = make_domain(Domain::unit_square().with_density({1, 2, 3, 4, 5, 6, 7, 8, 9}, 3, 3));
  Rng rng(4);
  std::vector<Point> z;
  for (int k = 0; k < 8; ++k) z.push_back(d->sample(rng));
  const auto lambda = fx::simplex(rng, 8, 0.02);
  const auto t = semidiscrete_weights(d, z, lambda);
  CHECK(mass_residual(t, lambda) <= 1e-9);
}

TEST_CASE("solver errors") {
  const auto d = fx::square();
  CHECK_THROWS_AS(semidiscrete_weights(d, {{0.2, 0.2}, {0.2, 0.2}}, {0.5, 0.5}), InputError);
  CHECK_THROWS_AS(semidiscrete_weights(d, {{0.2, 0.2}, {0.6, 0.2}}, {1.0, 0.0}), InputError);
  SolverOptions o;
  o.max_iterations = 0;
  try {
    semidiscrete_weights(d, {{0.2, 0.2}, {0.6, 0.2}}, {0.9, 0.1}, o);
    FAIL("expected a solver error");
  } catch (const SolverError& e) {
    CHECK(e.residual() > 0.1);
  }
  CHECK_THROWS_AS(laguerre_cells(fx::interval(), {{0.2, 0}}, {0.0}), UnsupportedError);
}
