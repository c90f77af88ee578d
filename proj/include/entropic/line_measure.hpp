#pragma once

#include <vector>

namespace entropic {

struct Atom1D {
  double x = 0.0;
  double w = 0.0;
};

/// Mass `w` spread with constant Lebesgue density over [a, b].
struct Slab {
  double a = 0.0;
  double b = 0.0;
  double w = 0.0;
};

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Completed graph of a nondecreasing function on [0, 1]: a polyline from
/// (0, 0) to (1, 1) with both coordinates nondecreasing. Jumps appear as
/// vertical pieces and flat stretches as horizontal ones, so the graph of the
/// right inverse is obtained by exchanging the coordinates.
using MonotoneCurve = std::vector<CurvePoint>;

MonotoneCurve swap_axes(const MonotoneCurve& c);

/// max{y : (x', y) on the curve, x' <= x}: the right-continuous version.
double eval_right(const MonotoneCurve& c, double x);
/// min{y : (x', y) on the curve, x' >= x}: the left-continuous version.
double eval_left(const MonotoneCurve& c, double x);

/// Probability measure on [0, 1] made of atoms and uniform slabs. Every
/// measure of this form has a piecewise-linear distribution function, and
/// the class is closed under taking right inverses.
class LineMeasure {
 public:
  LineMeasure() = default;
  /// Sorts, merges atoms closer than 1e-12, drops empty pieces and checks
  /// that the total mass is one within 1e-10. Slabs must not overlap.
  LineMeasure(std::vector<Atom1D> atoms, std::vector<Slab> slabs);

  static LineMeasure from_curve(const MonotoneCurve& c);

  const std::vector<Atom1D>& atoms() const { return atoms_; }
  const std::vector<Slab>& slabs() const { return slabs_; }
  bool purely_atomic() const { return slabs_.empty(); }

  MonotoneCurve curve() const;
  /// mu([0, x]).
  double cdf(double x) const;
  /// mu([0, x)).
  double cdf_left(double x) const;
  /// mu((a, b)) for a <= b.
  double open_mass(double a, double b) const;
  double mean() const;
  double second_moment() const;

  /// Lebesgue density at x, averaging the two sides at slab ends.
  double density(double x) const;

  /// Circle rotation by s: positions move to (x + s) mod 1.
  LineMeasure rotated(double s) const;

 private:
  std::vector<Atom1D> atoms_;
  std::vector<Slab> slabs_;
};

/// A nondecreasing function on [0, 1] stored through its completed graph.
class MonotoneFunction {
 public:
  MonotoneFunction(MonotoneCurve c, bool right_continuous)
      : curve_(std::move(c)), right_continuous_(right_continuous) {}

  /// Piecewise-linear interpolant through (xs[i], ys[i]); xs must start at 0
  /// and end at 1, ys nondecreasing in [0, 1].
  static MonotoneFunction from_samples(const std::vector<double>& xs,
                                       const std::vector<double>& ys);

  double operator()(double x) const {
    return right_continuous_ ? eval_right(curve_, x) : eval_left(curve_, x);
  }
  const MonotoneCurve& curve() const { return curve_; }
  bool right_continuous() const { return right_continuous_; }

 private:
  MonotoneCurve curve_;
  bool right_continuous_;
};

}  // namespace entropic
