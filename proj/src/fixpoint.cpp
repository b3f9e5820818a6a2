#include "linform/fixpoint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "linform/distributions.hpp"

namespace linform {

namespace {

// Chain for grid index k (level j = bit_width(k-1)): seed at
// tau_k = scales[j] * k = t_max k / 2^(depth+j) <= t_base, then j doubling
// steps. The scales are exact exponent shifts of t_max, hoisted out of the
// per-point loops (ldexp is not loop-invariant-motion-safe under errno).
std::vector<double> chain_scales(double t_max, int depth) {
  std::vector<double> scales(std::size_t(depth) + 1);
  for (int j = 0; j <= depth; ++j) scales[std::size_t(j)] = t_max * std::ldexp(1.0, -(depth + j));
  return scales;
}

double seed_versine(double tau, double a2, double a4) {
  const double u = tau * tau;
  return a2 * u + a4 * (u * u);
}

double versine_step(double v) { return 4.0 * v - 2.0 * v * v; }

int level_of(std::uint64_t k) { return k <= 1 ? 0 : std::bit_width(k - 1); }

void seed_coefficients(const FixpointConfig& config, double curvature, double quartic_perturb,
                       double& a2, double& a4) {
  validate(config);
  if (!(curvature < 0.0)) throw std::invalid_argument("solve_by_doubling: curvature must be negative");
  a2 = -0.5 * curvature;
  a4 = -quartic_perturb;
  if (config.taylor_order >= 4) a4 -= curvature * curvature / 24.0;
}

}  // namespace

void validate(const FixpointConfig& config) {
  if (!(config.t_max > 0.0) || !std::isfinite(config.t_max))
    throw std::invalid_argument("fixpoint: t_max must be positive");
  if (config.depth < 10 || config.depth > 30)
    throw std::invalid_argument("fixpoint: depth must be in [10, 30]");
  if (config.taylor_order != 2 && config.taylor_order != 4)
    throw std::invalid_argument("fixpoint: taylor_order must be 2 or 4");
  if (!(config.tolerance > 0.0))
    throw std::invalid_argument("fixpoint: tolerance must be positive");
  const double t_base = config.t_max * std::ldexp(1.0, -config.depth);
  if (t_base > 1e-2)
    throw std::invalid_argument("fixpoint: base scale t_max/2^depth exceeds 1e-2");
  if (std::pow(t_base, config.taylor_order + 2) > config.tolerance)
    throw std::invalid_argument("fixpoint: seed truncation error exceeds tolerance");
}

GridFunction apply_doubling(const GridFunction& g) {
  if (!g.grid.dyadic) throw std::invalid_argument("apply_doubling: needs a dyadic grid");
  if (g.values.size() != g.grid.size())
    throw std::invalid_argument("apply_doubling: size mismatch");
  GridFunction out;
  out.grid = g.grid.half();
  out.values.resize(out.grid.size());
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = 2.0 * g.values[i] * g.values[i] - 1.0;
  return out;
}

GridFunction solve_by_doubling(const FixpointConfig& config, double curvature,
                               double quartic_perturb) {
  double a2, a4;
  seed_coefficients(config, curvature, quartic_perturb, a2, a4);
  const int J = config.depth;
  GridFunction out;
  out.grid = Grid::make_dyadic(config.t_max, J);
  out.values.resize(out.grid.size());
  out.values[0] = 1.0;

  const std::vector<double> scales = chain_scales(config.t_max, J);
  constexpr std::int64_t kBlock = 4096;
  for (int j = 0; j <= J; ++j) {
    const double scale = scales[std::size_t(j)];
    const std::uint64_t lo = j == 0 ? 1 : (std::uint64_t{1} << (j - 1)) + 1;
    const std::uint64_t hi = std::uint64_t{1} << j;
    const std::int64_t blocks = std::int64_t((hi - lo) / kBlock) + 1;
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const std::uint64_t first = lo + std::uint64_t(b) * kBlock;
      const std::uint64_t last = std::min(hi, first + kBlock - 1);
      double buf[kBlock];
      for (std::uint64_t k = first; k <= last; ++k)
        buf[k - first] = seed_versine(scale * double(k), a2, a4);
      const std::size_t width = std::size_t(last - first + 1);
      for (int s = 0; s < j; ++s)
        for (std::size_t i = 0; i < width; ++i) buf[i] = versine_step(buf[i]);
      for (std::uint64_t k = first; k <= last; ++k)
        out.values[k] = 1.0 - buf[k - first];
    }
  }
  return out;
}

namespace serial {

GridFunction solve_by_doubling(const FixpointConfig& config, double curvature,
                               double quartic_perturb) {
  double a2, a4;
  seed_coefficients(config, curvature, quartic_perturb, a2, a4);
  const int J = config.depth;
  GridFunction out;
  out.grid = Grid::make_dyadic(config.t_max, J);
  out.values.resize(out.grid.size());
  out.values[0] = 1.0;
  const std::vector<double> scales = chain_scales(config.t_max, J);
  for (std::uint64_t k = 1; k < out.values.size(); ++k) {
    const int j = level_of(k);
    double v = seed_versine(scales[std::size_t(j)] * double(k), a2, a4);
    for (int s = 0; s < j; ++s) v = versine_step(v);
    out.values[k] = 1.0 - v;
  }
  return out;
}

}  // namespace serial

double metric_d(const GridFunction& g1, const GridFunction& g2) {
  if (!(g1.grid == g2.grid)) throw std::invalid_argument("metric_d: grid mismatch");
  if (g1.values.size() != g1.grid.size() || g2.values.size() != g2.grid.size())
    throw std::invalid_argument("metric_d: size mismatch");
  double sup = 0.0;
  for (std::size_t k = 1; k < g1.values.size(); ++k) {
    const double t = g1.grid.points[k];
    sup = std::max(sup, std::fabs(g1.values[k] - g2.values[k]) / (t * t * t));
  }
  return sup;
}

namespace {

bool in_class_f(const GridFunction& g) {
  if (g.grid.size() < 3 || g.values.size() != g.grid.size()) return false;
  if (std::fabs(g.values[0] - 1.0) > 1e-12) return false;
  for (double v : g.values)
    if (std::fabs(v) > 1.0 + 1e-12) return false;
  // Richardson second derivative at 0 (slope is 0 on class F).
  const double h1 = g.grid.points[1], h2 = g.grid.points[2];
  const double d1 = 2.0 * (g.values[1] - 1.0) / (h1 * h1);
  const double d2 = 2.0 * (g.values[2] - 1.0) / (h2 * h2);
  return std::fabs((4.0 * d1 - d2) / 3.0 + 1.0) <= 5e-3;
}

}  // namespace

ContractionReport contraction_check(
    const std::vector<std::pair<GridFunction, GridFunction>>& pairs) {
  ContractionReport report;
  report.entries.resize(pairs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < std::int64_t(pairs.size()); ++i) {
    const auto& [g1, g2] = pairs[std::size_t(i)];
    ContractionEntry& entry = report.entries[std::size_t(i)];
    if (!(g1.grid == g2.grid) || !in_class_f(g1) || !in_class_f(g2)) {
      entry.status = ContractionEntry::Status::RejectedClassF;
      continue;
    }
    entry.input_distance = metric_d(g1, g2);
    if (entry.input_distance == 0.0) {
      entry.status = ContractionEntry::Status::SkippedIdentical;
      continue;
    }
    entry.ratio = metric_d(apply_doubling(g1), apply_doubling(g2)) / entry.input_distance;
  }
  for (const ContractionEntry& entry : report.entries) {
    switch (entry.status) {
      case ContractionEntry::Status::Ok:
        ++report.checked;
        report.max_ratio = std::max(report.max_ratio, entry.ratio);
        break;
      case ContractionEntry::Status::RejectedClassF: ++report.rejected; break;
      case ContractionEntry::Status::SkippedIdentical: ++report.skipped; break;
    }
  }
  return report;
}

double viete_product(double a, double t, int terms) {
  if (terms < 1) throw std::invalid_argument("viete_product: terms must be >= 1");
  const double x = a * t;
  double prod = 1.0;
  for (int k = 0; k < terms; ++k) prod *= std::cos(std::ldexp(x, -k));
  return prod;
}

double viete_closed_form(double a, double t) { return sinc(2.0 * a * t); }

}  // namespace linform
