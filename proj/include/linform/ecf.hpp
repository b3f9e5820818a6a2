#pragma once

#include <cstddef>
#include <vector>

#include "linform/grid.hpp"
#include "linform/linear_forms.hpp"

namespace linform {

// Real-part empirical characteristic function on a grid. Every law in scope
// is symmetric, so the imaginary part is pure noise; it is evaluated once
// per estimate as a sanity diagnostic (imag_max) and discarded.
struct ECFEstimate {
  Grid grid;
  std::vector<double> values;  // values[0] == 1 exactly; |values[k]| <= 1
  std::size_t n = 0;
  std::vector<double> se;  // pointwise standard errors, se[0] == 0
  double imag_max = 0.0;

  GridFunction as_grid_function() const { return {grid, values}; }
};

// values[k] = (1/n) sum_j cos(t_k x_j), pairwise-summed per grid point so the
// result is bit-stable for any thread count.
//
// se[k] = sqrt((1 + g(2 t_k) - 2 g(t_k)^2) / (2n)) with g(2 t_k) looked up on
// the grid when 2k fits (uniform-from-zero grids make that an exact index),
// else the conservative 1/sqrt(n); clipped to [0, 1/sqrt(n) + 1/n].
//
// with_imag: also evaluates max_k |(1/n) sum_j sin(t_k x_j)|; throws
// domain_error above 8/sqrt(n) (symmetric data stays far below; a violation
// means the sample was not drawn from a symmetric law). Hot loops that
// re-estimate per replicate pass false.
ECFEstimate ecf(const SampleBatch& sample, const Grid& grid, bool with_imag = true);

// 2-D joint ECF of (L1, L2) pairs: entry (i,j) = (1/n) sum_k cos(s_i L1_k + t_j L2_k).
struct JointEcf {
  Grid s_grid, t_grid;
  std::size_t n = 0;
  std::vector<double> values;  // row-major: values[i * t_grid.size() + j]

  double at(std::size_t i, std::size_t j) const { return values[i * t_grid.size() + j]; }
};

JointEcf joint_ecf(const PairBatch& pairs, const Grid& s_grid, const Grid& t_grid);

// sqrt of the trapezoidal integral of (g1 - g2)^2 w(t) over the common grid.
double cf_distance(const GridFunction& g1, const GridFunction& g2, const Weight& weight = {});

namespace serial {
ECFEstimate ecf(const SampleBatch& sample, const Grid& grid, bool with_imag = true);
JointEcf joint_ecf(const PairBatch& pairs, const Grid& s_grid, const Grid& t_grid);
}  // namespace serial

}  // namespace linform
