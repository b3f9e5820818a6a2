#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "linform/ecf.hpp"
#include "oracles.hpp"

using namespace linform;

TEST_CASE("ecf of a symmetric two-point sample is the cosine exactly") {
  SampleBatch s;
  s.values = {-1.0, 1.0};
  s.n = 2;
  const Grid grid = Grid::make_dyadic(4.0, 5);
  const ECFEstimate e = ecf(s, grid);
  for (std::size_t k = 0; k < grid.size(); ++k)
    CHECK(e.values[k] == std::cos(grid.points[k]));
  CHECK(e.values[0] == 1.0);
  CHECK(e.se[0] == 0.0);
}

TEST_CASE("ecf of zeros is identically 1") {
  SampleBatch s;
  s.values.assign(100, 0.0);
  s.n = 100;
  const ECFEstimate e = ecf(s, Grid::make_dyadic(4.0, 4));
  for (const double v : e.values) CHECK(v == 1.0);
}

TEST_CASE("ecf basic bounds and standard errors") {
  const SampleBatch s = sample(uniform_sym(1.0), 10000, 51);
  const Grid grid = Grid::make_dyadic(8.0, 6);
  const ECFEstimate e = ecf(s, grid);
  const double cap = 1.0 / std::sqrt(double(s.n)) + 1.0 / double(s.n);
  CHECK(e.n == s.n);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(std::fabs(e.values[k]) <= 1.0);
    CHECK(e.se[k] >= 0.0);
    CHECK(e.se[k] <= cap);
  }
  CHECK(e.se[0] == 0.0);
  CHECK(e.se[5] > 0.0);
  CHECK_THROWS_AS(ecf(SampleBatch{}, grid), std::invalid_argument);
}

TEST_CASE("ecf is reproducible, thread-count independent, permutation stable") {
  const SampleBatch s = sample(sech_squared(1.0), 70001, 52);
  const Grid grid = Grid::make_dyadic(8.0, 6);
  const ECFEstimate a = ecf(s, grid);
  const ECFEstimate b = ecf(s, grid);
  const ECFEstimate c = serial::ecf(s, grid);
  CHECK(a.values == b.values);
  CHECK(a.values == c.values);
  CHECK(a.se == c.se);

  SampleBatch shuffled = s;
  std::reverse(shuffled.values.begin(), shuffled.values.end());
  const ECFEstimate d = ecf(shuffled, grid);
  for (std::size_t k = 0; k < grid.size(); ++k)
    CHECK(std::fabs(a.values[k] - d.values[k]) < 1e-13);
}

TEST_CASE("ecf tracks the exact cf at rate 4/sqrt(n)") {
  const Grid grid = Grid::make_dyadic(8.0, 6);
  const std::size_t n = 100000;
  const double bound = 4.0 / std::sqrt(double(n));
  int fails = 0;
  for (const auto& spec :
       {two_point(1.0), uniform_sym(1.0), sech_squared(1.0), gaussian(1.0)}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const SampleBatch s = sample(spec, n, seed);
      const ECFEstimate e = ecf(s, grid);
      double worst = 0.0;
      for (std::size_t k = 0; k < grid.size(); ++k)
        worst = std::max(worst, std::fabs(e.values[k] - cf_exact(spec, grid.points[k])));
      if (worst > bound) ++fails;
      CHECK(worst < 1.5 * bound);
    }
  }
  CHECK(fails <= 2);  // 4/sqrt(n) is a ~4 sigma envelope per point
}

TEST_CASE("ecf imaginary-part diagnostic rejects asymmetric samples") {
  SampleBatch shifted;
  shifted.values.assign(10000, 1.0);
  shifted.n = shifted.values.size();
  const Grid grid = Grid::make_dyadic(4.0, 4);
  CHECK_THROWS_AS(ecf(shifted, grid), std::domain_error);
  CHECK_NOTHROW(ecf(shifted, grid, false));

  const SampleBatch ok = sample(uniform_sym(1.0), 10000, 53);
  const ECFEstimate e = ecf(ok, grid);
  CHECK(e.imag_max <= 4.0 / std::sqrt(double(ok.n)));
}

TEST_CASE("joint ecf with s = 0 row collapses to the marginal ecf") {
  const PairBatch pairs = sample_independence_pair(two_point(1.0), 20000, 54);
  const Grid t_grid = Grid::make_dyadic(4.0, 4);
  const Grid zero = Grid::from_points({0.0});
  const JointEcf joint = joint_ecf(pairs, zero, t_grid);

  SampleBatch second;
  second.values = pairs.l2;
  second.n = pairs.n;
  const ECFEstimate marginal = ecf(second, t_grid, false);
  for (std::size_t j = 0; j < t_grid.size(); ++j)
    CHECK(joint.at(0, j) == marginal.values[j]);
}

TEST_CASE("joint ecf of the two-point pair approximates cos(s)cos(t)") {
  const PairBatch pairs = sample_independence_pair(two_point(1.0), 100000, 55);
  const Grid grid = Grid::make_dyadic(4.0, 3);
  const JointEcf joint = joint_ecf(pairs, grid, grid);
  REQUIRE(joint.values.size() == grid.size() * grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double want = std::cos(grid.points[i]) * std::cos(grid.points[j]);
      CHECK(std::fabs(joint.at(i, j) - want) < 0.02);
    }
  CHECK(joint.at(0, 0) == 1.0);
}

TEST_CASE("joint ecf of the uniform pair shows the dependence gap at (1,1)") {
  const PairBatch pairs = sample_independence_pair(uniform_sym(1.0), 200000, 56);
  const Grid grid = Grid::from_points({0.0, 1.0});
  const JointEcf joint = joint_ecf(pairs, grid, grid);

  // E cos(L1 + L2) = (sinc(2) + 1)/2: half the pairs collapse to L1 = L2,
  // the other half to L1 = -L2.
  CHECK(joint.at(1, 1) == doctest::Approx(0.72732435670642042).epsilon(0.01));

  SampleBatch first, second;
  first.values = pairs.l1;
  first.n = pairs.n;
  second.values = pairs.l2;
  second.n = pairs.n;
  const Grid point = Grid::from_points({0.0, 1.0});
  const double m1 = ecf(first, point, false).values[1];
  const double m2 = ecf(second, point, false).values[1];
  CHECK(m1 * m2 == doctest::Approx(0.70807341827357119).epsilon(0.01));
  // the factorization gap sinc(1)^2-to-(sinc(2)+1)/2 is the T2 test's signal
  CHECK(joint.at(1, 1) - m1 * m2 == doctest::Approx(0.01925093843284923).epsilon(0.35));
}

TEST_CASE("joint ecf determinism and serial equivalence") {
  const PairBatch pairs = sample_independence_pair(sech_squared(1.0), 70001, 57);
  const Grid grid = Grid::make_dyadic(4.0, 3);
  const JointEcf a = joint_ecf(pairs, grid, grid);
  const JointEcf b = serial::joint_ecf(pairs, grid, grid);
  CHECK(a.values == b.values);

  PairBatch ragged = pairs;
  ragged.l2.pop_back();
  CHECK_THROWS_AS(joint_ecf(ragged, grid, grid), std::invalid_argument);
}

TEST_CASE("cf_distance") {
  const Grid grid = Grid::make_dyadic(4.0, 6);
  const GridFunction f = tabulate(grid, [](double t) { return std::cos(t); });
  const GridFunction g = tabulate(grid, [](double t) { return sinc(t); });

  CHECK(cf_distance(f, f) == 0.0);
  const double d = cf_distance(f, g);
  CHECK(d > 0.0);
  CHECK(cf_distance(g, f) == d);

  // quadrupling the weight amplitude exactly doubles the distance
  CHECK(cf_distance(f, g, Weight{4.0, 1.0}) == 2.0 * d);

  // the integrand decays fast enough that refining the grid barely moves it
  const Grid fine = Grid::make_dyadic(4.0, 10);
  const double dfine = cf_distance(tabulate(fine, [](double t) { return std::cos(t); }),
                                   tabulate(fine, [](double t) { return sinc(t); }));
  CHECK(d == doctest::Approx(dfine).epsilon(2e-3));

  const GridFunction h = tabulate(Grid::make_dyadic(4.0, 5), [](double t) { return sinc(t); });
  CHECK_THROWS_AS(cf_distance(f, h), std::invalid_argument);
}
