#include "linform/ecf.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linform/summation.hpp"

namespace linform {

namespace {

template <bool Parallel>
ECFEstimate ecf_impl(const SampleBatch& sample, const Grid& grid, bool with_imag) {
  const std::size_t n = sample.values.size();
  if (n < 2) throw std::invalid_argument("ecf: need n >= 2");
  const std::size_t m = grid.size();
  ECFEstimate est;
  est.grid = grid;
  est.n = n;
  est.values.resize(m);
  est.se.resize(m);
  const double* x = sample.values.data();
  std::vector<double> imag(with_imag ? m : 0, 0.0);

  const auto eval_point = [&](std::size_t k) {
    const double t = grid.points[k];
    est.values[k] =
        pairwise_sum(n, [&](std::size_t j) { return std::cos(t * x[j]); }) / double(n);
    // |mean of cosines| <= 1 mathematically; shave accumulated rounding
    est.values[k] = std::clamp(est.values[k], -1.0, 1.0);
    if (with_imag)
      imag[k] = pairwise_sum(n, [&](std::size_t j) { return std::sin(t * x[j]); }) / double(n);
  };
  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < std::ptrdiff_t(m); ++k) eval_point(std::size_t(k));
  } else {
    for (std::size_t k = 0; k < m; ++k) eval_point(k);
  }

  // cos(0 * x) = 1 exactly, and a pairwise sum of n ones is exactly n.
  const double root_n = std::sqrt(double(n));
  const double se_cap = 1.0 / root_n + 1.0 / double(n);
  for (std::size_t k = 0; k < m; ++k) {
    const double g = est.values[k];
    double s;
    if (grid.dyadic && 2 * k < m) {  // 2 t_k on the grid: exact index lookup
      const double g2 = est.values[2 * k];
      s = std::sqrt(std::max(0.0, (1.0 + g2 - 2.0 * g * g) / (2.0 * double(n))));
    } else {
      s = 1.0 / root_n;  // conservative bound instead of extrapolating cf(2t)
    }
    est.se[k] = std::clamp(s, 0.0, se_cap);
  }
  est.se[0] = 0.0;  // values[0] == 1 identically

  if (with_imag) {
    double worst = 0.0;
    for (const double v : imag) worst = std::max(worst, std::fabs(v));
    est.imag_max = worst;
    if (worst > 8.0 / root_n)
      throw std::domain_error("ecf: imaginary part too large; sample is not symmetric about 0");
  }
  return est;
}

template <bool Parallel>
JointEcf joint_impl(const PairBatch& pairs, const Grid& s_grid, const Grid& t_grid) {
  const std::size_t n = pairs.l1.size();
  if (n < 1 || pairs.l2.size() != n) throw std::invalid_argument("joint_ecf: empty or ragged pairs");
  const std::size_t ms = s_grid.size();
  const std::size_t mt = t_grid.size();
  JointEcf joint;
  joint.s_grid = s_grid;
  joint.t_grid = t_grid;
  joint.n = n;
  joint.values.resize(ms * mt);
  const double* l1 = pairs.l1.data();
  const double* l2 = pairs.l2.data();
  const auto eval_cell = [&](std::size_t cell) {
    const double s = s_grid.points[cell / mt];
    const double t = t_grid.points[cell % mt];
    joint.values[cell] =
        pairwise_sum(n, [&](std::size_t k) { return std::cos(s * l1[k] + t * l2[k]); }) /
        double(n);
  };
  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(ms * mt); ++c) eval_cell(std::size_t(c));
  } else {
    for (std::size_t c = 0; c < ms * mt; ++c) eval_cell(c);
  }
  return joint;
}

}  // namespace

ECFEstimate ecf(const SampleBatch& sample, const Grid& grid, bool with_imag) {
  return ecf_impl<true>(sample, grid, with_imag);
}

JointEcf joint_ecf(const PairBatch& pairs, const Grid& s_grid, const Grid& t_grid) {
  return joint_impl<true>(pairs, s_grid, t_grid);
}

namespace serial {
ECFEstimate ecf(const SampleBatch& sample, const Grid& grid, bool with_imag) {
  return ecf_impl<false>(sample, grid, with_imag);
}

JointEcf joint_ecf(const PairBatch& pairs, const Grid& s_grid, const Grid& t_grid) {
  return joint_impl<false>(pairs, s_grid, t_grid);
}
}  // namespace serial

double cf_distance(const GridFunction& g1, const GridFunction& g2, const Weight& weight) {
  if (!(g1.grid == g2.grid)) throw std::invalid_argument("cf_distance: grid mismatch");
  if (g1.values.size() != g1.grid.size() || g2.values.size() != g2.grid.size())
    throw std::invalid_argument("cf_distance: value/grid size mismatch");
  std::vector<double> integrand(g1.grid.size());
  for (std::size_t k = 0; k < integrand.size(); ++k) {
    const double d = g1.values[k] - g2.values[k];
    integrand[k] = d * d * weight(g1.grid.points[k]);
  }
  return std::sqrt(trapezoid(g1.grid, integrand));
}

}  // namespace linform
