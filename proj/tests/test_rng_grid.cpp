#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "linform/grid.hpp"
#include "linform/rng.hpp"

using namespace linform;

TEST_CASE("mix64 matches the splitmix64 reference sequence") {
  // First three outputs of splitmix64 from state 0 (public reference values).
  CHECK(mix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(mix64(0x9e3779b97f4a7c15ULL) == 0x6e789e6aa1b965f4ULL);
  CHECK(mix64(2 * 0x9e3779b97f4a7c15ULL) == 0x06c45d188009454fULL);
}

TEST_CASE("derive_seed separates adjacent indices") {
  const std::uint64_t a = derive_seed(42, 0);
  const std::uint64_t b = derive_seed(42, 1);
  const std::uint64_t c = derive_seed(43, 0);
  CHECK(a != b);
  CHECK(a != c);
  CHECK(derive_seed(42, 0) == a);
}

TEST_CASE("rng streams are reproducible and distinct") {
  Rng r1(123), r2(123);
  for (int i = 0; i < 100; ++i) CHECK(r1.next() == r2.next());

  Rng s0(123, 0), s1(123, 1);
  bool any_diff = false;
  for (int i = 0; i < 16; ++i) any_diff |= (s0.next() != s1.next());
  CHECK(any_diff);
}

TEST_CASE("rng ranges") {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.next_unit_open();
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    const std::uint64_t b = rng.next_bit();
    CHECK(b <= 1);
    CHECK(rng.bounded(10) < 10);
  }
}

TEST_CASE("rng moments") {
  Rng rng(2024);
  const int n = 200000;
  double su = 0.0, sn = 0.0, sn2 = 0.0;
  for (int i = 0; i < n; ++i) su += rng.next_unit();
  for (int i = 0; i < n; ++i) {
    const double z = rng.next_normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(std::fabs(su / n - 0.5) < 0.005);
  CHECK(std::fabs(sn / n) < 0.02);
  CHECK(std::fabs(sn2 / n - 1.0) < 0.03);
}

TEST_CASE("fisher_yates permutes deterministically") {
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  Rng rng(5);
  fisher_yates(v.data(), v.size(), rng);
  std::vector<int> w = v;
  std::sort(w.begin(), w.end());
  for (int i = 0; i < 50; ++i) CHECK(w[std::size_t(i)] == i);
  CHECK(v != w);  // 50! permutations; identity would mean a broken shuffle

  std::vector<int> v2(50);
  std::iota(v2.begin(), v2.end(), 0);
  Rng rng2(5);
  fisher_yates(v2.data(), v2.size(), rng2);
  CHECK(v == v2);
}

TEST_CASE("dyadic grid halves by exact index lookup") {
  const Grid g = Grid::make_dyadic(8.0, 8);
  REQUIRE(g.size() == 257);
  CHECK(g.dyadic);
  CHECK(g.points[0] == 0.0);
  CHECK(g.t_max() == 8.0);
  CHECK(g.spacing() == 0.03125);
  for (std::size_t k = 0; 2 * k < g.size(); ++k)
    CHECK(g.points[2 * k] / 2.0 == g.points[k]);
}

TEST_CASE("make_uniform detects dyadic sizes and matches make_dyadic") {
  const Grid u = Grid::make_uniform(8.0, 257);
  CHECK(u.dyadic);
  CHECK(u == Grid::make_dyadic(8.0, 8));
  CHECK_FALSE(Grid::make_uniform(8.0, 258).dyadic);
  CHECK_FALSE(Grid::make_uniform(8.0, 100).dyadic);
}

TEST_CASE("half and prefix") {
  const Grid g = Grid::make_dyadic(4.0, 4);  // 17 points
  const Grid h = g.half();
  REQUIRE(h.size() == 9);
  CHECK(h.dyadic);
  for (std::size_t k = 0; k < h.size(); ++k) CHECK(h.points[k] == g.points[2 * k]);

  const Grid p = g.prefix(5);
  REQUIRE(p.size() == 5);
  CHECK(p.points.back() == g.points[4]);
  CHECK(p.dyadic);

  CHECK_THROWS_AS(g.prefix(0), std::invalid_argument);
  CHECK_THROWS_AS(g.prefix(18), std::invalid_argument);
  CHECK_THROWS_AS(Grid::from_points({0.0, 1.0}).half().half(), std::invalid_argument);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid::make_dyadic(-1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make_dyadic(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make_dyadic(1.0, 31), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make_uniform(1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Grid::from_points({}), std::invalid_argument);
  CHECK_THROWS_AS(Grid::from_points({1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(Grid::from_points({0.0, 2.0, 2.0}), std::invalid_argument);
  CHECK_FALSE(Grid::from_points({0.0, 0.5, 1.0}).dyadic);
}

TEST_CASE("trapezoid and tabulate") {
  const Grid g = Grid::make_dyadic(8.0, 8);
  const std::vector<double> ones(g.size(), 1.0);
  CHECK(trapezoid(g, ones) == doctest::Approx(8.0).epsilon(1e-14));

  const GridFunction lin = tabulate(g, [](double t) { return t; });
  CHECK(lin.values[32] == g.points[32]);
  CHECK(trapezoid(g, lin.values) == doctest::Approx(32.0).epsilon(1e-14));

  CHECK_THROWS_AS(trapezoid(g, std::vector<double>(5, 1.0)), std::invalid_argument);
}

TEST_CASE("weight evaluates a gaussian envelope") {
  const Weight w{2.0, 0.5};
  CHECK(w(0.0) == 2.0);
  CHECK(w(1.0) == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-15));
}
