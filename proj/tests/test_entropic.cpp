#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "entropic/entropic.hpp"
#include "entropic/metrics.hpp"
#include "entropic/stats.hpp"
#include "entropic/transport.hpp"
#include "fixtures.hpp"

using namespace entropic;

namespace {

DirichletSample given_nu(DomainPtr d, std::vector<Point> atoms, std::vector<double> w) {
  DirichletSample s{{}, atoms, Measure::discrete(std::move(d), atoms, w)};
  s.sticks.lambda = w;
  s.sticks.remainder = 0.0;
  return s;
}

}  // namespace

TEST_CASE("1D entropic samples mirror nu") {
  for (auto d : {fx::interval(), fx::circle()}) {
    const bool circle = d->kind() == DomainKind::kCircle;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto s = sample_entropic(1.0, d, seed);
      const auto& nu = *s.nu.nu.get_if<DiscreteMeasure>();
      const auto* mu = s.mu.get_if<DiscreteMeasure>();
      REQUIRE(mu != nullptr);

      // Hole sizes are nu's weights.
      double total = 0.0;
      for (const auto& h : s.holes) {
        CHECK(std::abs(h.size - nu.weights[h.atom]) <= 1e-12);
        total += h.size;
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);

      // Atom masses of mu are the gaps between consecutive atoms of nu.
      std::vector<double> xs;
      for (const auto& p : nu.atoms) xs.push_back(p.x);
      std::sort(xs.begin(), xs.end());
      std::vector<double> gaps;
      if (circle) {
        for (std::size_t i = 0; i < xs.size(); ++i)
          gaps.push_back(i + 1 < xs.size() ? xs[i + 1] - xs[i] : 1.0 - xs.back() + xs.front());
      } else {
        gaps.push_back(xs.front());
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) gaps.push_back(xs[i + 1] - xs[i]);
        gaps.push_back(1.0 - xs.back());
      }
      std::vector<double> masses = mu->weights;
      gaps.erase(std::remove_if(gaps.begin(), gaps.end(), [](double g) { return g <= 1e-12; }), gaps.end());
      std::sort(gaps.begin(), gaps.end());
      std::sort(masses.begin(), masses.end());
      REQUIRE(gaps.size() == masses.size());
      for (std::size_t i = 0; i < gaps.size(); ++i) CHECK(std::abs(gaps[i] - masses[i]) <= 1e-12);

      // mu does not charge the holes, and conjugating again returns nu.
      for (double p : hole_report(s, 0.0)) CHECK(p <= 1e-12);
      const auto back = conjugate_measure_1d(s.mu);
      const auto* bd = back.get_if<DiscreteMeasure>();
      REQUIRE(bd != nullptr);
      REQUIRE(bd->atoms.size() == nu.atoms.size());
      for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < nu.atoms.size(); ++j)
          found = found || (distance(*d, bd->atoms[j], nu.atoms[i]) <= 1e-12 &&
                            std::abs(bd->weights[j] - nu.weights[i]) <= 1e-12);
        CHECK(found);
      }
      CHECK(atom_report(s, 1e-12).mass == doctest::Approx(masses.back()));
    }
  }
}

TEST_CASE("hole sizes follow the stick law") {
  const auto d = fx::interval();
  std::vector<std::vector<double>> sizes(4);
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const auto s = sample_entropic(1.0, d, Rng::derive(77, seed));
    for (std::size_t k = 0; k < 4 && k < s.holes.size(); ++k) sizes[k].push_back(s.holes[k].size);
    for (std::size_t k = s.holes.size(); k < 4; ++k) sizes[k].push_back(0.0);
  }
  for (int k = 0; k < 4; ++k) CHECK(moment_check(sizes[k], std::pow(0.5, k + 1), 0.25).pass);
}

TEST_CASE("law of mu does not depend on the order of the sticks") {
  const auto d = fx::interval();
  const auto m = Measure::reference(d);
  std::vector<double> plain;
  std::vector<double> sorted;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    Rng rng(Rng::derive(500, seed));
    auto nu = sample_dirichlet_ferguson(1.0, d, rng);
    Rng cloud(0);
    plain.push_back(wasserstein_1d(entropic_from_nu(nu, cloud).mu, m));
    auto w = order_sizes(nu.sticks);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& v : w) v /= total;
    auto reordered = given_nu(d, nu.atoms, w);
    sorted.push_back(wasserstein_1d(entropic_from_nu(reordered, cloud).mu, m));
  }
  CHECK(ks_test_two_sample(plain, sorted).pass);
}

TEST_CASE("2D entropic samples") {
  const auto sq = fx::square();
  EntropicOptions opt;
  opt.cloud_points = 20000;

  SUBCASE("single atom gives corner atoms") {
    Rng rng(1);
    const auto s = entropic_from_nu(given_nu(sq, {{0.3, 0.3}}, {1.0}), rng, opt);
    const auto a = atom_report(s, 1e-9);
    CHECK(a.location.x == doctest::Approx(1.0));
    CHECK(a.location.y == doctest::Approx(1.0));
    CHECK(std::abs(a.mass - 0.49) <= 0.02);
  }
  SUBCASE("two symmetric sites") {
    Rng rng(2);
    const auto s = entropic_from_nu(given_nu(sq, {{0.25, 0.5}, {0.75, 0.5}}, {0.5, 0.5}), rng, opt);
    for (double p : hole_report(s, 1e-9)) CHECK(p == 0.0);
    for (const auto& h : s.holes) CHECK(std::abs(h.size - 0.5) <= 1e-9);
  }
  SUBCASE("random ten-atom samples") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto s = sample_entropic(1.0, sq, seed, Truncation::terms(10), opt);
      for (const auto& h : s.holes) CHECK(std::abs(h.size - h.weight) <= 1e-6);
      for (double p : hole_report(s, 1e-9)) CHECK(p <= 2e-3);
      CHECK(skeleton_fraction(s, 1e-9) >= 0.995);
    }
  }
  SUBCASE("many atoms spread the mass") {
    const auto s = sample_entropic(200.0, sq, 3, Truncation::terms(400), opt);
    CHECK(atom_report(s, 1e-9).mass <= 1e-2);
  }
}

TEST_CASE("solver failures carry a replay bundle") {
  EntropicOptions opt;
  opt.solver.max_iterations = 0;
  opt.solver.fallback_iterations = 0;
  opt.solver.tol = 1e-300;
  try {
    sample_entropic(1.0, fx::square(), 9, Truncation::terms(5), opt);
    FAIL("expected a solver failure");
  } catch (const SampleError& e) {
    CHECK(e.replay()["seed"] == 9);
    const Measure nu = measure_from_json(e.replay()["nu"]);
    Rng rng(9);
    const auto again = sample_dirichlet_ferguson(1.0, fx::square(), rng, Truncation::terms(5));
    CHECK(to_json(nu) == to_json(again.nu));
  }
}
