#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace linform {

// Evaluation grid on [0, t_max], first point always 0.
//
// A grid flagged `dyadic` is uniform with spacing t_max/2^J (or a prefix /
// even-index slice of such a grid), so the half point of an even-indexed
// point is an exact index lookup: t[k]/2 == t[k/2] bit-for-bit. All the
// functional-equation residuals rely on that; they reject non-dyadic grids
// rather than interpolate.
struct Grid {
  std::vector<double> points;
  bool dyadic = false;

  // 2^levels + 1 uniformly spaced points on [0, t_max].
  static Grid make_dyadic(double t_max, int levels);
  // m uniformly spaced points on [0, t_max]; dyadic iff m-1 is a power of 2.
  static Grid make_uniform(double t_max, std::size_t m);
  // Arbitrary validated points (strictly increasing, first 0); not dyadic.
  static Grid from_points(std::vector<double> pts);

  // Even-index slice: same t range, half the resolution. Keeps dyadic.
  Grid half() const;
  // First `count` points. Keeps the dyadic (uniform-from-zero) property.
  Grid prefix(std::size_t count) const;

  std::size_t size() const { return points.size(); }
  double t_max() const { return points.back(); }
  double spacing() const { return points.size() > 1 ? points[1] - points[0] : 0.0; }

  bool operator==(const Grid& other) const {
    return dyadic == other.dyadic && points == other.points;
  }
};

struct GridFunction {
  Grid grid;
  std::vector<double> values;
};

// Integration / distance weight w(t) = amplitude * exp(-decay * t^2).
struct Weight {
  double amplitude = 1.0;
  double decay = 1.0;
  double operator()(double t) const { return amplitude * std::exp(-decay * t * t); }
};

// Trapezoidal rule over the grid (general spacing).
double trapezoid(const Grid& grid, const std::vector<double>& integrand);

GridFunction tabulate(const Grid& grid, const std::function<double(double)>& f);

}  // namespace linform
