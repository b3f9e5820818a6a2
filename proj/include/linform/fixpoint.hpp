#pragma once

// Doubling operator B g = 2 g(./2)^2 - 1, its fixed-point solver, the
// t^3-weighted contraction metric, and the cosine half-angle product.

#include <cstddef>
#include <utility>
#include <vector>

#include "linform/grid.hpp"

namespace linform {

struct FixpointConfig {
  double t_max = 4.0;
  int depth = 20;        // base scale t_base = t_max / 2^depth
  int taylor_order = 4;  // seed order, 2 or 4
  double tolerance = 1e-8;
};

// Throws std::invalid_argument unless depth is in [10, 30], t_base <= 1e-2,
// and the seed truncation error t_base^(order+2) is below tolerance.
void validate(const FixpointConfig& config);

// (B g)(t) = 2 g(t/2)^2 - 1, reported on the even-index half grid.
GridFunction apply_doubling(const GridFunction& g);

// Seeds 1 + c t^2/2 + c^2 t^4/24 + quartic_perturb t^4 at scale t_base and
// extends outward through K(2t) = 2 K(t)^2 - 1.  The recursion is iterated in
// versine form v = 1 - K (v(2t) = 4v - 2v^2), which keeps relative precision
// where K is close to 1; in K form the seed rounding is amplified by ~4^depth.
// With curvature -a^2 the result is cos(a t) to within config.tolerance.
GridFunction solve_by_doubling(const FixpointConfig& config, double curvature,
                               double quartic_perturb = 0.0);

// d(g1, g2) = sup_{t > 0} |g1(t) - g2(t)| / t^3 over the grid (Eq metric on
// class F; the t = 0 point is excluded).  Grids must be identical.
double metric_d(const GridFunction& g1, const GridFunction& g2);

struct ContractionEntry {
  enum class Status { Ok, RejectedClassF, SkippedIdentical };
  Status status = Status::Ok;
  double ratio = 0.0;           // d(B g1, B g2) / d(g1, g2), valid when Ok
  double input_distance = 0.0;  // d(g1, g2)
};

struct ContractionReport {
  std::vector<ContractionEntry> entries;
  double max_ratio = 0.0;  // over Ok entries
  std::size_t checked = 0;
  std::size_t rejected = 0;
  std::size_t skipped = 0;
};

// For each class-F pair, the contraction ratio of the doubling operator.
// Class F here is checked as: g(0) = 1, |g| <= 1, and a Richardson estimate
// of g''(0) equal to -1 within 5e-3.  Violations are recorded, not thrown.
ContractionReport contraction_check(
    const std::vector<std::pair<GridFunction, GridFunction>>& pairs);

// Partial product prod_{k=0}^{terms-1} cos(a t / 2^k) and its limit
// sin(2 a t) / (2 a t).
double viete_product(double a, double t, int terms);
double viete_closed_form(double a, double t);

namespace serial {
// Per-point reference: one seed-and-double chain per grid point, no batching.
// Bitwise equal to the batched solver.
GridFunction solve_by_doubling(const FixpointConfig& config, double curvature,
                               double quartic_perturb = 0.0);
}  // namespace serial

}  // namespace linform
