#include "entropic/line_measure.hpp"

#include <algorithm>
#include <cmath>

#include "entropic/error.hpp"

namespace entropic {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kMassTol = 1e-10;
// Levels this close to one are rounding residue of the running sum.
constexpr double kLevelSnap = 1e-13;
// Pieces lighter than this in a curve are rounding residue as well.
constexpr double kPieceFloor = 1e-15;

}  // namespace

MonotoneCurve swap_axes(const MonotoneCurve& c) {
  MonotoneCurve out;
  out.reserve(c.size());
  for (const auto& p : c) out.push_back({p.y, p.x});
  return out;
}

double eval_right(const MonotoneCurve& c, double x) {
  if (c.empty()) return 0.0;
  auto it = std::upper_bound(c.begin(), c.end(), x,
                             [](double v, const CurvePoint& p) { return v < p.x; });
  if (it == c.begin()) return c.front().y;
  const auto i = static_cast<std::size_t>(it - c.begin()) - 1;
  if (i + 1 >= c.size()) return c.back().y;
  const CurvePoint a = c[i];
  const CurvePoint b = c[i + 1];
  return a.y + (x - a.x) / (b.x - a.x) * (b.y - a.y);
}

double eval_left(const MonotoneCurve& c, double x) {
  if (c.empty()) return 0.0;
  auto it = std::lower_bound(c.begin(), c.end(), x,
                             [](const CurvePoint& p, double v) { return p.x < v; });
  if (it == c.end()) return c.back().y;
  const auto j = static_cast<std::size_t>(it - c.begin());
  if (j == 0 || c[j].x == x) return c[j].y;
  const CurvePoint a = c[j - 1];
  const CurvePoint b = c[j];
  return a.y + (x - a.x) / (b.x - a.x) * (b.y - a.y);
}

LineMeasure::LineMeasure(std::vector<Atom1D> atoms, std::vector<Slab> slabs) {
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!(a.w >= 0.0) || !std::isfinite(a.x)) throw InputError("atom weights must be >= 0");
    total += a.w;
  }
  for (const auto& s : slabs) {
    if (!(s.w >= 0.0)) throw InputError("slab mass must be >= 0");
    if (!(s.b > s.a)) throw InputError("slab must have positive length");
    total += s.w;
  }
  if (std::abs(total - 1.0) > kMassTol) {
    throw InputError("1D measure has total mass " + std::to_string(total));
  }

  std::sort(atoms.begin(), atoms.end(), [](const Atom1D& a, const Atom1D& b) { return a.x < b.x; });
  for (const auto& a : atoms) {
    if (a.w == 0.0) continue;
    if (!atoms_.empty() && a.x - atoms_.back().x <= kMergeTol) {
      atoms_.back().w += a.w;
    } else {
      atoms_.push_back(a);
    }
  }

  std::sort(slabs.begin(), slabs.end(), [](const Slab& a, const Slab& b) { return a.a < b.a; });
  for (const auto& s : slabs) {
    if (s.w == 0.0) continue;
    if (!slabs_.empty() && s.a < slabs_.back().b - kMergeTol) {
      throw InputError("slabs overlap");
    }
    slabs_.push_back(s);
  }
}

LineMeasure LineMeasure::from_curve(const MonotoneCurve& c) {
  std::vector<Atom1D> atoms;
  std::vector<Slab> slabs;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    const double dx = c[k + 1].x - c[k].x;
    const double dy = c[k + 1].y - c[k].y;
    if (dy <= kPieceFloor) continue;
    if (dx <= 0.0) {
      atoms.push_back({c[k].x, dy});
    } else {
      slabs.push_back({c[k].x, c[k + 1].x, dy});
    }
  }
  return LineMeasure(std::move(atoms), std::move(slabs));
}

MonotoneCurve LineMeasure::curve() const {
  std::vector<double> breaks{0.0, 1.0};
  for (const auto& a : atoms_) breaks.push_back(a.x);
  for (const auto& s : slabs_) {
    breaks.push_back(s.a);
    breaks.push_back(s.b);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  MonotoneCurve c;
  c.reserve(2 * breaks.size());
  double y = 0.0;
  std::size_t ai = 0;
  std::size_t si = 0;
  auto push = [&](double x, double v) {
    if (!c.empty() && c.back().x == x && c.back().y == v) return;
    c.push_back({x, v});
  };
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    const double p = breaks[k];
    push(p, y);
    while (ai < atoms_.size() && atoms_[ai].x <= p) {
      y += atoms_[ai].w;
      ++ai;
    }
    push(p, y);
    if (k + 1 < breaks.size()) {
      const double q = breaks[k + 1];
      while (si < slabs_.size() && slabs_[si].b <= p) ++si;
      if (si < slabs_.size() && slabs_[si].a <= p && slabs_[si].b >= q) {
        const Slab& s = slabs_[si];
        y += s.w * (q - p) / (s.b - s.a);
      }
    }
  }
  // Pin the endpoint; rounding in the running sum must not leave a gap.
  for (auto& pt : c) pt.y = pt.y >= 1.0 - kLevelSnap ? 1.0 : pt.y;
  if (c.back().y < 1.0) c.push_back({1.0, 1.0});
  c.back().y = 1.0;
  return c;
}

double LineMeasure::cdf(double x) const {
  double s = 0.0;
  for (const auto& a : atoms_) {
    if (a.x <= x) s += a.w;
  }
  for (const auto& sl : slabs_) {
    if (x >= sl.b) {
      s += sl.w;
    } else if (x > sl.a) {
      s += sl.w * (x - sl.a) / (sl.b - sl.a);
    }
  }
  return s;
}

double LineMeasure::cdf_left(double x) const {
  double s = cdf(x);
  for (const auto& a : atoms_) {
    if (a.x == x) s -= a.w;
  }
  return s;
}

double LineMeasure::open_mass(double a, double b) const {
  if (b <= a) return 0.0;
  return std::max(0.0, cdf_left(b) - cdf(a));
}

double LineMeasure::mean() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.w * a.x;
  for (const auto& s : slabs_) m += s.w * 0.5 * (s.a + s.b);
  return m;
}

double LineMeasure::second_moment() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.w * a.x * a.x;
  for (const auto& s : slabs_) m += s.w * (s.a * s.a + s.a * s.b + s.b * s.b) / 3.0;
  return m;
}

double LineMeasure::density(double x) const {
  double left = 0.0;
  double right = 0.0;
  for (const auto& s : slabs_) {
    const double d = s.w / (s.b - s.a);
    if (x > s.a && x <= s.b) left += d;
    if (x >= s.a && x < s.b) right += d;
  }
  return 0.5 * (left + right);
}

LineMeasure LineMeasure::rotated(double s) const {
  auto wrap = [](double x) {
    double r = x - std::floor(x);
    if (r >= 1.0 - kMergeTol) r = 0.0;
    return r;
  };
  std::vector<Atom1D> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& a : atoms_) atoms.push_back({wrap(a.x + s), a.w});
  std::vector<Slab> slabs;
  for (const auto& sl : slabs_) {
    double a = sl.a + s;
    double b = sl.b + s;
    const double shift = std::floor(a);
    a -= shift;
    b -= shift;
    if (b <= 1.0 + kMergeTol) {
      slabs.push_back({a, std::min(b, 1.0), sl.w});
    } else {
      const double len = sl.b - sl.a;
      const double w1 = sl.w * (1.0 - a) / len;
      if (1.0 > a) slabs.push_back({a, 1.0, w1});
      slabs.push_back({0.0, b - 1.0, sl.w - w1});
    }
  }
  return LineMeasure(std::move(atoms), std::move(slabs));
}

MonotoneFunction MonotoneFunction::from_samples(const std::vector<double>& xs,
                                                const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw InputError("need matching sample vectors");
  if (xs.front() != 0.0 || xs.back() != 1.0) throw InputError("samples must span [0, 1]");
  MonotoneCurve c;
  c.push_back({0.0, 0.0});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && (xs[i] < xs[i - 1] || ys[i] < ys[i - 1])) {
      throw InputError("samples are not nondecreasing");
    }
    c.push_back({xs[i], std::clamp(ys[i], 0.0, 1.0)});
  }
  c.push_back({1.0, 1.0});
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return MonotoneFunction(std::move(c), true);
}

}  // namespace entropic
