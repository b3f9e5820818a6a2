#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "linform/rng.hpp"

namespace linform {

// ---------------------------------------------------------------------------
// Special functions with removable singularities at 0.
// Taylor branch below 1e-4 keeps ~1e-15 accuracy right through the switch.
// ---------------------------------------------------------------------------

// sin(x)/x, value 1 at x = 0.
inline double sinc(double x) {
  if (std::fabs(x) < 1e-4) {
    const double u = x * x;
    return 1.0 - u / 6.0 + u * u / 120.0;
  }
  return std::sin(x) / x;
}

// x/sinh(x), value 1 at x = 0.
inline double x_over_sinh(double x) {
  if (std::fabs(x) < 1e-4) {
    const double u = x * x;
    return 1.0 - u / 6.0 + 7.0 * u * u / 360.0;
  }
  return x / std::sinh(x);
}

// ---------------------------------------------------------------------------
// Reference laws.
// ---------------------------------------------------------------------------

enum class Family { TwoPoint, UniformSym, SechSquared, Gaussian };

// Symmetric law with one positive scale parameter:
//   TwoPoint(a):     mass 1/2 at -a and +a;          cf(t) = cos(a t)
//   UniformSym(A):   density 1/(2A) on (-A, A);      cf(t) = sin(A t)/(A t)
//   SechSquared(a):  density pi/(4a cosh^2(pi x/2a)); cf(t) = a t / sinh(a t)
//   Gaussian(sigma): negative control;               cf(t) = exp(-sigma^2 t^2/2)
struct DistributionSpec {
  Family family;
  double scale;
};

DistributionSpec two_point(double a);
DistributionSpec uniform_sym(double A);
DistributionSpec sech_squared(double a);
DistributionSpec gaussian(double sigma);

const char* family_name(Family family);
std::string describe(const DistributionSpec& spec);

// Closed-form characteristic function; real and even, cf(0) = 1.
double cf_exact(const DistributionSpec& spec, double t);

// Density / CDF for the absolutely continuous families.
// TwoPoint has neither; use pmf() for it.
double density(const DistributionSpec& spec, double x);
double cdf(const DistributionSpec& spec, double x);
std::vector<std::pair<double, double>> pmf(const DistributionSpec& spec);

// ---------------------------------------------------------------------------
// Random coefficient laws (finite, dyadic-rational probabilities).
// ---------------------------------------------------------------------------

// Finite law whose probabilities are num/2^den_log2 with exact normalization:
// sum of numerators == 2^den_log2, checked in integer arithmetic. With
// den_log2 <= 52 every probability and every cumulative partial sum is an
// exact double, so inverse-CDF sampling is reproducible to the bit.
struct CoefficientLaw {
  enum class Kind { EpsBernoulli, XiHalfOne, EpsN };
  struct Atom {
    double value;
    std::uint64_t num;
  };
  Kind kind;
  int n = 0;  // EpsN only
  int den_log2 = 0;
  std::vector<Atom> atoms;
  std::vector<double> cum;  // exact cumulative probabilities, last == 1.0

  double probability(std::size_t i) const { return std::ldexp(double(atoms[i].num), -den_log2); }
};

// eps in {0,1}, probability 1/2 each.
CoefficientLaw eps_bernoulli();
// xi in {1/2,1}, probability 1/2 each.
CoefficientLaw xi_half_one();
// eps_n: P[n-2k] = C(n,k)/2^(n-1) for k = 0..ceil(n/2)-1, and for even n an
// extra mass C(n,n/2)/2^n at 0, making cos^n t = sum_v P[v] cos(v t) exact
// for every n (the even-n constant term is the v = 0 atom).
CoefficientLaw epsilon_n_pmf(int n);

double draw_coefficient(const CoefficientLaw& law, Rng& rng);

// ---------------------------------------------------------------------------
// Sampling.
// ---------------------------------------------------------------------------

struct SampleBatch {
  std::vector<double> values;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string source;
};

// One draw, advancing the stream by a fixed number of uniforms per family.
double draw_one(const DistributionSpec& spec, Rng& rng);

// n i.i.d. draws. Work is chunked (chunk c uses substream (seed, c)), so the
// values are identical for any thread count, and also serve as the
// substream discipline for the parallel path.
SampleBatch sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

namespace serial {
SampleBatch sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);
}

// Mean of squares (pairwise summation).
double mean_square(const std::vector<double>& values);

// Method-of-moments scale fit: TwoPoint a = sqrt(m2); UniformSym A = sqrt(3 m2);
// SechSquared a = sqrt(3 m2) (its variance is a^2/3); Gaussian sigma = sqrt(m2).
DistributionSpec moment_fit(Family family, const SampleBatch& sample);

// Exact binomial row C(n, 0..n) via Pascal's triangle (n <= 60).
std::vector<std::uint64_t> binomial_row(int n);

}  // namespace linform
