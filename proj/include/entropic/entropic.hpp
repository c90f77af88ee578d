#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "entropic/dirichlet.hpp"
#include "entropic/error.hpp"
#include "entropic/io.hpp"
#include "entropic/laguerre.hpp"
#include "entropic/measures.hpp"

namespace entropic {

/// Open region on which the Brenier map of nu is constant.
struct Hole {
  /// Index of the atom of nu mapped from this region.
  std::size_t atom = 0;
  double weight = 0.0;
  /// m(U).
  double size = 0.0;
  /// 1D: the open interval (lo, hi); on the circle it wraps when lo > hi.
  double lo = 0.0;
  double hi = 0.0;
  /// 2D: the Laguerre cell.
  Polygon cell;
};

struct EntropicOptions {
  /// Size of the 2D empirical cloud for mu.
  std::size_t cloud_points = 100000;
  SolverOptions solver;
};

struct EntropicSample {
  double beta = 0.0;
  std::uint64_t seed = 0;
  Truncation truncation;
  DirichletSample nu;
  /// nu^c: exact in 1D, an empirical cloud in 2D.
  Measure mu;
  std::vector<Hole> holes;
  std::shared_ptr<const Tessellation> tessellation;
};

/// Solver failure on a sampled nu. `replay` holds seed, beta, truncation and
/// nu for reproducing the failure.
class SampleError : public SolverError {
 public:
  SampleError(const SolverError& e, Json replay)
      : SolverError(e.what(), e.residual(), e.iterations()), replay_(std::move(replay)) {}
  const Json& replay() const noexcept { return replay_; }

 private:
  Json replay_;
};

/// Draws nu from the Dirichlet-Ferguson process with Rng(seed) and conjugates it.
EntropicSample sample_entropic(double beta, DomainPtr domain, std::uint64_t seed, const Truncation& truncation = {},
                               const EntropicOptions& options = {});

/// Conjugates a given discrete nu; the cloud draws use `rng`.
EntropicSample entropic_from_nu(DirichletSample nu, Rng& rng, const EntropicOptions& options = {});

/// mu-mass of each hole shrunk by `buffer`: exact in 1D, the fraction of cloud
/// points in 2D.
std::vector<double> hole_report(const EntropicSample& s, double buffer);

struct AtomReport {
  double mass = 0.0;
  Point location{};
};

/// Largest mu-mass within distance tol of a support point.
AtomReport atom_report(const EntropicSample& s, double tol);

/// Fraction of the 2D cloud within eps of the cell edges or the domain boundary.
double skeleton_fraction(const EntropicSample& s, double eps);

Json replay_bundle(const EntropicSample& s);
Json to_json(const EntropicSample& s);

}  // namespace entropic
