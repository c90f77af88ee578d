#include <cmath>

#include "doctest.h"
#include "entropic/domain.hpp"
#include "entropic/error.hpp"
#include "fixtures.hpp"

using namespace entropic;

TEST_CASE("distance on the three domain kinds") {
  CHECK(distance(Domain::circle(), {0.0, 0}, {0.9, 0}) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(distance(Domain::interval(), {0.2, 0}, {0.7, 0}) == doctest::Approx(0.5));
  CHECK(distance(Domain::unit_square(), {0, 0}, {1, 1}) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(distance(Domain::interval(), {1.5, 0}, {0.2, 0}), DomainError);
  CHECK_THROWS_AS(distance(Domain::unit_square(), {0.5, -0.1}, {0.2, 0.2}), DomainError);
}

TEST_CASE("diameter") {
  CHECK(diameter(Domain::interval()) == 1.0);
  CHECK(diameter(Domain::circle()) == 0.5);
  CHECK(diameter(Domain::unit_square()) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("metric axioms on grid-node triples") {
  for (auto d : {fx::interval(), fx::circle(), fx::square()}) {
    const auto g = build_grid(d, d->is_one_dimensional() ? 17 : 4);
    const auto& n = g->nodes;
    for (const auto& x : n)
      for (const auto& y : n) {
        const double dxy = distance(*d, x, y);
        CHECK(dxy == distance(*d, y, x));
        CHECK(dxy >= 0.0);
        for (const auto& z : n) CHECK(distance(*d, x, z) <= dxy + distance(*d, y, z) + 1e-15);
      }
    for (const auto& x : n) CHECK(distance(*d, x, x) == 0.0);
  }
}

TEST_CASE("polygon validation") {
  CHECK_THROWS_AS(Domain::polygon({{0, 0}, {1, 0}, {2, 0}}), InputError);
  CHECK_THROWS_AS(Domain::polygon({{0, 0}, {2, 0}, {1, 0.2}, {2, 2}, {0, 2}}), InputError);
  const Domain cw = Domain::polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  CHECK(signed_area(cw.polygon().vertices) > 0.0);
  CHECK(cw.volume() == doctest::Approx(1.0));
}

TEST_CASE("grid spacing and covering radius") {
  const auto gi = build_grid(fx::interval(), 1001);
  CHECK(gi->eps == doctest::Approx(1e-3));
  const auto gc = build_grid(fx::circle(), 1000);
  CHECK(gc->eps == doctest::Approx(5e-4));
  const auto gs = build_grid(fx::square(), 64);
  CHECK(gs->size() <= 64u * 64u);
  double area_sum = 0.0;
  for (std::size_t i = 0; i < gs->size(); ++i) {
    CHECK(gs->domain->contains(gs->nodes[i]));
    area_sum += gs->volumes[i];
  }
  CHECK(std::abs(area_sum - 1.0) <= 1e-9);

  CHECK_THROWS_AS(build_grid(fx::interval(), 1), ConfigError);
  CHECK_THROWS_AS(build_grid(fx::square(), 3), ConfigError);

  const auto tri = make_domain(Domain::polygon({{0, 0}, {1, 0}, {0.3, 0.8}}));
  Rng rng(3);
  for (auto g : {gi, gc, gs, build_grid(tri, 12)}) {
    for (int k = 0; k < 1000; ++k) {
      const Point p = g->domain->sample(rng);
      double best = 1e9;
      for (const auto& q : g->nodes) best = std::min(best, distance(*g->domain, p, q));
      CHECK(best <= g->eps);
    }
  }
}

TEST_CASE("reference weights") {
  const auto gi = build_grid(fx::interval(), 11);
  const auto wi = reference_weights(*gi);
  CHECK(wi.front() == doctest::Approx(0.05));
  CHECK(wi[5] == doctest::Approx(0.1));
  const auto wc = reference_weights(*build_grid(fx::circle(), 8));
  for (double w : wc) CHECK(w == doctest::Approx(0.125));

  std::vector<double> s(64);
  for (int k = 0; k < 64; ++k) s[k] = 2.0 + std::sin(2.0 * M_PI * (k + 0.5) / 64);
  const auto dom = make_domain(Domain::interval().with_density(s, 64));
  const auto w = reference_weights(*build_grid(dom, 300));
  double total = 0.0;
  for (double x : w) total += x;
  CHECK(std::abs(total - 1.0) <= 1e-12);

  CHECK_THROWS_AS(Domain::interval().with_density({0.0, 0.0}, 2), DegenerateError);
}

TEST_CASE("reference measure: cdf, quantile, sampling") {
  const Domain d = Domain::interval().with_density({3.0, 1.0}, 2);
  CHECK(d.cdf(0.5) == doctest::Approx(0.75));
  CHECK(d.quantile(0.75) == doctest::Approx(0.5));
  CHECK(d.quantile(0.875) == doctest::Approx(0.75));
  CHECK(d.mass(0.25, 0.75) == doctest::Approx(0.375 + 0.125));

  const Domain z = Domain::interval().with_density({1.0, 0.0, 1.0}, 3);
  CHECK_FALSE(z.has_full_support());
  Rng rng(11);
  for (int k = 0; k < 2000; ++k) {
    const double x = z.sample(rng).x;
    CHECK((x <= 1.0 / 3.0 || x >= 2.0 / 3.0));
  }

  const Domain sq = Domain::unit_square().with_density({1.0, 3.0}, 2, 1);
  CHECK(sq.mass(Polygon({{0, 0}, {0.5, 0}, {0.5, 1}, {0, 1}})) == doctest::Approx(0.25));
  CHECK(sq.line_integral({0.5, 0.0}, {0.5, 1.0}) > 0.0);
  int right = 0;
  for (int k = 0; k < 20000; ++k) right += sq.sample(rng).x > 0.5;
  CHECK(std::abs(right / 20000.0 - 0.75) < 0.02);
}
