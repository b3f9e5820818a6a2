#include "linform/distributions.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "linform/summation.hpp"

namespace linform {

namespace {

constexpr double kPi = 3.14159265358979323846;

// One sampling chunk = one RNG substream; fixed size makes the draw for
// index j independent of how many threads execute the loop.
constexpr std::size_t kChunk = std::size_t{1} << 16;

void check_scale(double s, const char* what) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument(std::string(what) + ": scale must be positive");
}

template <bool Parallel>
SampleBatch sample_impl(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  check_scale(spec.scale, "sample");
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  SampleBatch batch;
  batch.values.resize(n);
  batch.n = n;
  batch.seed = seed;
  batch.source = describe(spec);
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  const auto fill_chunk = [&](std::size_t c) {
    Rng rng(seed, c);
    const std::size_t lo = c * kChunk;
    const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
    for (std::size_t j = lo; j < hi; ++j) batch.values[j] = draw_one(spec, rng);
  };
  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(chunks); ++c) fill_chunk(std::size_t(c));
  } else {
    for (std::size_t c = 0; c < chunks; ++c) fill_chunk(c);
  }
  return batch;
}

}  // namespace

double draw_one(const DistributionSpec& spec, Rng& rng) {
  switch (spec.family) {
    case Family::TwoPoint:
      return rng.next_bit() ? spec.scale : -spec.scale;
    case Family::UniformSym:
      return spec.scale * (2.0 * rng.next_unit() - 1.0);
    case Family::SechSquared: {
      // Closed-form inverse CDF of the logistic-type law: F(x) = (1 + tanh(pi x / 2a))/2.
      const double u = rng.next_unit_open();
      return (spec.scale / kPi) * std::log(u / (1.0 - u));
    }
    case Family::Gaussian:
      return spec.scale * rng.next_normal();
  }
  throw std::logic_error("unreachable family");
}

DistributionSpec two_point(double a) {
  check_scale(a, "two_point");
  return {Family::TwoPoint, a};
}
DistributionSpec uniform_sym(double A) {
  check_scale(A, "uniform_sym");
  return {Family::UniformSym, A};
}
DistributionSpec sech_squared(double a) {
  check_scale(a, "sech_squared");
  return {Family::SechSquared, a};
}
DistributionSpec gaussian(double sigma) {
  check_scale(sigma, "gaussian");
  return {Family::Gaussian, sigma};
}

const char* family_name(Family family) {
  switch (family) {
    case Family::TwoPoint: return "two-point";
    case Family::UniformSym: return "uniform";
    case Family::SechSquared: return "sech2";
    case Family::Gaussian: return "gaussian";
  }
  return "?";
}

std::string describe(const DistributionSpec& spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s(%.17g)", family_name(spec.family), spec.scale);
  return buf;
}

double cf_exact(const DistributionSpec& spec, double t) {
  const double u = spec.scale * t;
  switch (spec.family) {
    case Family::TwoPoint: return std::cos(u);
    case Family::UniformSym: return sinc(u);
    case Family::SechSquared: return x_over_sinh(u);
    case Family::Gaussian: return std::exp(-0.5 * u * u);
  }
  throw std::logic_error("unreachable family");
}

double density(const DistributionSpec& spec, double x) {
  switch (spec.family) {
    case Family::TwoPoint:
      throw std::domain_error("density: two-point law is purely atomic; use pmf()");
    case Family::UniformSym:
      return std::fabs(x) < spec.scale ? 1.0 / (2.0 * spec.scale) : 0.0;
    case Family::SechSquared: {
      const double c = std::cosh(kPi * x / (2.0 * spec.scale));
      return kPi / (4.0 * spec.scale * c * c);
    }
    case Family::Gaussian: {
      const double z = x / spec.scale;
      return std::exp(-0.5 * z * z) / (spec.scale * std::sqrt(2.0 * kPi));
    }
  }
  throw std::logic_error("unreachable family");
}

double cdf(const DistributionSpec& spec, double x) {
  switch (spec.family) {
    case Family::TwoPoint:
      throw std::domain_error("cdf: two-point law is purely atomic; use pmf()");
    case Family::UniformSym: {
      if (x <= -spec.scale) return 0.0;
      if (x >= spec.scale) return 1.0;
      return (x + spec.scale) / (2.0 * spec.scale);
    }
    case Family::SechSquared:
      return 0.5 * (1.0 + std::tanh(kPi * x / (2.0 * spec.scale)));
    case Family::Gaussian:
      return 0.5 * std::erfc(-x / (spec.scale * std::sqrt(2.0)));
  }
  throw std::logic_error("unreachable family");
}

std::vector<std::pair<double, double>> pmf(const DistributionSpec& spec) {
  if (spec.family != Family::TwoPoint) throw std::domain_error("pmf: only the two-point law is atomic");
  return {{-spec.scale, 0.5}, {spec.scale, 0.5}};
}

std::vector<std::uint64_t> binomial_row(int n) {
  if (n < 0 || n > 60) throw std::invalid_argument("binomial_row: n out of range");
  std::vector<std::uint64_t> row(std::size_t(n) + 1, 1);
  for (int i = 1; i <= n; ++i)
    for (int k = i - 1; k > 0; --k) row[k] += row[k - 1];
  return row;
}

namespace {

CoefficientLaw finish_law(CoefficientLaw law) {
  std::uint64_t total = 0;
  for (const auto& a : law.atoms) total += a.num;
  if (total != std::uint64_t{1} << law.den_log2)
    throw std::logic_error("coefficient law: probabilities do not normalize exactly");
  law.cum.resize(law.atoms.size());
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < law.atoms.size(); ++i) {
    running += law.atoms[i].num;
    // dyadic rational with numerator < 2^53: exact as a double
    law.cum[i] = std::ldexp(double(running), -law.den_log2);
  }
  return law;
}

}  // namespace

CoefficientLaw eps_bernoulli() {
  CoefficientLaw law;
  law.kind = CoefficientLaw::Kind::EpsBernoulli;
  law.den_log2 = 1;
  law.atoms = {{0.0, 1}, {1.0, 1}};
  return finish_law(std::move(law));
}

CoefficientLaw xi_half_one() {
  CoefficientLaw law;
  law.kind = CoefficientLaw::Kind::XiHalfOne;
  law.den_log2 = 1;
  law.atoms = {{0.5, 1}, {1.0, 1}};
  return finish_law(std::move(law));
}

CoefficientLaw epsilon_n_pmf(int n) {
  if (n < 2) throw std::invalid_argument("epsilon_n_pmf: n must be >= 2");
  if (n > 50) throw std::invalid_argument("epsilon_n_pmf: n too large for exact integer arithmetic");
  const auto binom = binomial_row(n);
  CoefficientLaw law;
  law.kind = CoefficientLaw::Kind::EpsN;
  law.n = n;
  // Common denominator 2^n: C(n,k)/2^(n-1) becomes 2 C(n,k)/2^n.
  law.den_log2 = n;
  if (n % 2 == 1) {
    for (int k = 0; k <= (n - 1) / 2; ++k)
      law.atoms.push_back({double(n - 2 * k), 2 * binom[std::size_t(k)]});
  } else {
    for (int k = 0; k < n / 2; ++k)
      law.atoms.push_back({double(n - 2 * k), 2 * binom[std::size_t(k)]});
    law.atoms.push_back({0.0, binom[std::size_t(n / 2)]});
  }
  return finish_law(std::move(law));
}

double draw_coefficient(const CoefficientLaw& law, Rng& rng) {
  const double u = rng.next_unit();
  for (std::size_t i = 0; i + 1 < law.cum.size(); ++i)
    if (u < law.cum[i]) return law.atoms[i].value;
  return law.atoms.back().value;
}

SampleBatch sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  return sample_impl<true>(spec, n, seed);
}

namespace serial {
SampleBatch sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  return sample_impl<false>(spec, n, seed);
}
}  // namespace serial

double mean_square(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("mean_square: empty input");
  return pairwise_sum(values.size(), [&](std::size_t i) { return values[i] * values[i]; }) /
         double(values.size());
}

DistributionSpec moment_fit(Family family, const SampleBatch& batch) {
  if (batch.values.size() < 2) throw std::invalid_argument("moment_fit: need n >= 2");
  const double m2 = mean_square(batch.values);
  if (!(m2 > 0.0)) throw std::domain_error("moment_fit: degenerate sample (zero second moment)");
  switch (family) {
    case Family::TwoPoint: return {family, std::sqrt(m2)};
    case Family::UniformSym: return {family, std::sqrt(3.0 * m2)};
    case Family::SechSquared: return {family, std::sqrt(3.0 * m2)};
    case Family::Gaussian: return {family, std::sqrt(m2)};
  }
  throw std::logic_error("unreachable family");
}

}  // namespace linform
