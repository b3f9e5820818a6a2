#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "linform/linear_forms.hpp"
#include "oracles.hpp"

using namespace linform;

namespace {

// Exact empirical frequency table; every realized value of a two-point-input
// form is a dyadic rational, so exact keying is legitimate.
std::map<double, double> frequencies(const std::vector<double>& values) {
  std::map<double, std::size_t> counts;
  for (const double v : values) ++counts[v];
  std::map<double, double> freq;
  for (const auto& [v, c] : counts) freq[v] = double(c) / double(values.size());
  return freq;
}

void check_matches_law(const std::vector<double>& values, const oracle::FiniteLaw& law,
                       double tol) {
  for (const auto& [v, f] : frequencies(values)) {
    REQUIRE(law.contains(v));
    CHECK(std::fabs(f - law.probability(v)) < tol);
  }
}

}  // namespace

TEST_CASE("theorem names and arities") {
  CHECK(std::string(theorem_name(TheoremId::Kind::T1)) == "t1");
  CHECK(std::string(theorem_name(TheoremId::Kind::T1A)) == "t1a");
  CHECK(theorem_arity(TheoremId::t1()) == 2);
  CHECK(theorem_arity(TheoremId::t1a(5)) == 5);
  CHECK(theorem_arity(TheoremId::t2()) == 2);
  CHECK(theorem_arity(TheoremId::t3()) == 3);
  CHECK(theorem_arity(TheoremId::t4()) == 3);
}

TEST_CASE("forms_for coefficient tables") {
  const FormPair t1 = forms_for(TheoremId::t1());
  REQUIRE(t1.lhs.head.has_value());
  CHECK(t1.lhs.head->kind == CoefficientLaw::Kind::EpsBernoulli);
  CHECK(t1.lhs.tail.empty());
  CHECK(t1.rhs.fixed_head == 0.5);
  CHECK(t1.rhs.tail == std::vector<double>{0.5});

  const FormPair t1a = forms_for(TheoremId::t1a(4));
  REQUIRE(t1a.lhs.head.has_value());
  CHECK(t1a.lhs.head->kind == CoefficientLaw::Kind::EpsN);
  CHECK(t1a.lhs.head->n == 4);
  CHECK(t1a.rhs.fixed_head == 1.0);
  CHECK(t1a.rhs.tail == std::vector<double>(3, 1.0));

  const FormPair t3 = forms_for(TheoremId::t3());
  CHECK(t3.lhs.head->kind == CoefficientLaw::Kind::XiHalfOne);
  CHECK(t3.lhs.tail == std::vector<double>{0.25, 0.25});
  CHECK(t3.rhs.fixed_head == 0.5);
  CHECK(t3.rhs.tail == std::vector<double>{0.5, 0.5});

  const FormPair t4 = forms_for(TheoremId::t4());
  CHECK(t4.lhs.head->kind == CoefficientLaw::Kind::XiHalfOne);
  CHECK(t4.lhs.tail == std::vector<double>{0.5, 0.5});
  CHECK(t4.rhs.fixed_head == 1.0);
  CHECK(t4.rhs.tail == std::vector<double>{0.25, 0.25});

  CHECK_THROWS_AS(forms_for(TheoremId::t2()), std::invalid_argument);
  CHECK_THROWS_AS(forms_for(TheoremId::t1a(1)), std::invalid_argument);
}

TEST_CASE("enumerated two-point laws: identities hold exactly where claimed") {
  for (const double a : {0.5, 1.0, 3.0}) {
    CHECK(oracle::t1_lhs(a) == oracle::t1_rhs(a));
    for (int n = 2; n <= 6; ++n) CHECK(oracle::t1a_lhs(n, a) == oracle::t1a_rhs(n, a));
    // T3 and T4 characterize continuous laws; with two-point input the sides differ
    CHECK_FALSE(oracle::t3_lhs(a) == oracle::t3_rhs(a));
    CHECK_FALSE(oracle::t4_lhs(a) == oracle::t4_rhs(a));
  }
}

TEST_CASE("sampled identity pairs match the enumerated laws atom by atom") {
  const std::size_t n = 40000;
  const auto spec = two_point(1.0);

  const auto [l1, r1] = sample_identity_pair(TheoremId::t1(), spec, n, 31);
  check_matches_law(l1.values, oracle::t1_lhs(1.0), 0.02);
  check_matches_law(r1.values, oracle::t1_rhs(1.0), 0.02);

  const auto [l3, r3] = sample_identity_pair(TheoremId::t1a(3), spec, n, 32);
  check_matches_law(l3.values, oracle::t1a_lhs(3, 1.0), 0.02);
  check_matches_law(r3.values, oracle::t1a_rhs(3, 1.0), 0.02);

  const auto [lt3, rt3] = sample_identity_pair(TheoremId::t3(), spec, n, 33);
  check_matches_law(lt3.values, oracle::t3_lhs(1.0), 0.02);
  check_matches_law(rt3.values, oracle::t3_rhs(1.0), 0.02);

  const auto [lt4, rt4] = sample_identity_pair(TheoremId::t4(), spec, n, 34);
  check_matches_law(lt4.values, oracle::t4_lhs(1.0), 0.02);
  check_matches_law(rt4.values, oracle::t4_rhs(1.0), 0.02);
}

TEST_CASE("identity pair uses disjoint randomness for the two sides") {
  const std::size_t n = 100000;
  const auto [lhs, rhs] = sample_identity_pair(TheoremId::t1(), two_point(1.0), n, 35);
  double cross = 0.0;
  for (std::size_t i = 0; i < n; ++i) cross += lhs.values[i] * rhs.values[i];
  // both sides have variance 1/2; shared draws would show up as correlation
  CHECK(std::fabs(cross / double(n)) < 4.0 * 0.5 / std::sqrt(double(n)));
}

TEST_CASE("identity pair errors") {
  CHECK_THROWS_AS(sample_identity_pair(TheoremId::t2(), two_point(1.0), 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_identity_pair(TheoremId::t1(), two_point(1.0), 0, 1),
                  std::invalid_argument);
}

TEST_CASE("identity pair determinism and serial equivalence") {
  const auto spec = sech_squared(1.0);
  const auto [a1, a2] = sample_identity_pair(TheoremId::t4(), spec, 70001, 36);
  const auto [b1, b2] = sample_identity_pair(TheoremId::t4(), spec, 70001, 36);
  const auto [c1, c2] = serial::sample_identity_pair(TheoremId::t4(), spec, 70001, 36);
  CHECK(a1.values == b1.values);
  CHECK(a2.values == b2.values);
  CHECK(a1.values == c1.values);
  CHECK(a2.values == c2.values);
  CHECK(a1.source.find("t4") != std::string::npos);
  CHECK(a1.values != a2.values);
}

TEST_CASE("T3 right side has variance scale^2/4 for uniform input") {
  const auto [lhs, rhs] = sample_identity_pair(TheoremId::t3(), uniform_sym(2.0), 100000, 37);
  CHECK(mean_square(rhs.values) == doctest::Approx(1.0).epsilon(0.03));
  CHECK(mean_square(lhs.values) == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("independence pair structure") {
  const std::size_t n = 40000;
  const PairBatch p = sample_independence_pair(two_point(1.0), n, 41);
  REQUIRE(p.l1.size() == n);
  REQUIRE(p.l2.size() == n);

  std::map<std::pair<double, double>, std::size_t> corners;
  double cross = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(std::fabs(p.l2[i]) == std::fabs(p.l1[i]));
    ++corners[{p.l1[i], p.l2[i]}];
    cross += p.l1[i] * p.l2[i];
  }
  REQUIRE(corners.size() == 4);
  for (const auto& [corner, count] : corners) {
    CHECK(std::fabs(corner.first) == 1.0);
    CHECK(std::fabs(double(count) / double(n) - 0.25) < 0.02);
  }
  CHECK(std::fabs(cross / double(n)) < 4.0 / std::sqrt(double(n)));
}

TEST_CASE("independence pair determinism and serial equivalence") {
  const PairBatch a = sample_independence_pair(uniform_sym(1.0), 70001, 42);
  const PairBatch b = sample_independence_pair(uniform_sym(1.0), 70001, 42);
  const PairBatch c = serial::sample_independence_pair(uniform_sym(1.0), 70001, 42);
  CHECK(a.l1 == b.l1);
  CHECK(a.l2 == b.l2);
  CHECK(a.l1 == c.l1);
  CHECK(a.l2 == c.l2);
  CHECK(sample_independence_pair(uniform_sym(1.0), 70001, 43).l1 != a.l1);
  CHECK_THROWS_AS(sample_independence_pair(uniform_sym(1.0), 0, 1), std::invalid_argument);
}
