#include "linform/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace linform {

namespace {

void validate_points(const std::vector<double>& pts) {
  if (pts.empty()) throw std::invalid_argument("grid: no points");
  if (pts.front() != 0.0) throw std::invalid_argument("grid: first point must be 0");
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (!(pts[k] > pts[k - 1])) throw std::invalid_argument("grid: points not strictly increasing");
    if (!std::isfinite(pts[k])) throw std::invalid_argument("grid: non-finite point");
  }
}

}  // namespace

Grid Grid::make_dyadic(double t_max, int levels) {
  if (!(t_max > 0.0)) throw std::invalid_argument("grid: t_max must be positive");
  if (levels < 1 || levels > 30) throw std::invalid_argument("grid: levels out of range");
  const std::size_t m = (std::size_t{1} << levels) + 1;
  Grid g;
  g.points.resize(m);
  // t_max * 2^-levels is an exact exponent shift, so each point carries one
  // rounding of t_max * k / 2^J and halving a point halves its index.
  const double scale = t_max * std::ldexp(1.0, -levels);
  for (std::size_t k = 0; k < m; ++k) g.points[k] = scale * double(k);
  g.dyadic = true;
  return g;
}

Grid Grid::make_uniform(double t_max, std::size_t m) {
  if (!(t_max > 0.0)) throw std::invalid_argument("grid: t_max must be positive");
  if (m < 2) throw std::invalid_argument("grid: need at least 2 points");
  Grid g;
  g.points.resize(m);
  for (std::size_t k = 0; k < m; ++k)
    g.points[k] = t_max * (double(k) / double(m - 1));
  g.points.back() = t_max;
  g.dyadic = ((m - 1) & (m - 2)) == 0;  // m-1 a power of two
  return g;
}

Grid Grid::from_points(std::vector<double> pts) {
  validate_points(pts);
  Grid g;
  g.points = std::move(pts);
  g.dyadic = false;
  return g;
}

Grid Grid::half() const {
  if (points.size() < 3) throw std::invalid_argument("grid: too small to halve");
  Grid g;
  g.points.reserve((points.size() + 1) / 2);
  for (std::size_t k = 0; k < points.size(); k += 2) g.points.push_back(points[k]);
  g.dyadic = dyadic;
  return g;
}

Grid Grid::prefix(std::size_t count) const {
  if (count < 1 || count > points.size()) throw std::invalid_argument("grid: bad prefix length");
  Grid g;
  g.points.assign(points.begin(), points.begin() + count);
  g.dyadic = dyadic;
  return g;
}

double trapezoid(const Grid& grid, const std::vector<double>& integrand) {
  if (integrand.size() != grid.size()) throw std::invalid_argument("trapezoid: size mismatch");
  if (grid.size() < 2) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k)
    s += 0.5 * (integrand[k] + integrand[k + 1]) * (grid.points[k + 1] - grid.points[k]);
  return s;
}

GridFunction tabulate(const Grid& grid, const std::function<double(double)>& f) {
  GridFunction g;
  g.grid = grid;
  g.values.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) g.values[k] = f(grid.points[k]);
  return g;
}

}  // namespace linform
