#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linform/distributions.hpp"

namespace linform {

// The five linear-form configurations under test. T1A carries the number of
// i.i.d. copies on its right-hand side.
struct TheoremId {
  enum class Kind { T1, T1A, T2, T3, T4 };
  Kind kind;
  int n = 0;  // T1A only, >= 2

  static TheoremId t1() { return {Kind::T1}; }
  static TheoremId t1a(int n) { return {Kind::T1A, n}; }
  static TheoremId t2() { return {Kind::T2}; }
  static TheoremId t3() { return {Kind::T3}; }
  static TheoremId t4() { return {Kind::T4}; }
};

const char* theorem_name(TheoremId::Kind kind);
// Number of i.i.d. X-copies a single realization consumes (max over sides).
int theorem_arity(const TheoremId& theorem);

// One side of an identity: value = c0 * X_1 + sum_i tail[i] * X_(i+2),
// where c0 is either a fixed weight or a draw from a coefficient law
// (independent of the X's).
struct LinearForm {
  std::optional<CoefficientLaw> head;
  double fixed_head = 1.0;
  std::vector<double> tail;
};

struct FormPair {
  LinearForm lhs, rhs;
};

// Coefficient tables per theorem (identity theorems only; T2 is the
// independence configuration and has no two-sided form pair).
FormPair forms_for(const TheoremId& theorem);

// n independent realizations of each side. The two sides use disjoint
// randomness: the identity is an equality of laws, not a coupling, and
// shared draws would bias two-sample tests toward acceptance.
std::pair<SampleBatch, SampleBatch> sample_identity_pair(const TheoremId& theorem,
                                                         const DistributionSpec& spec,
                                                         std::size_t n, std::uint64_t seed);

// Joint sample of (L1, L2) = (eps X1 + (1-eps) X2, eps X1 - (1-eps) X2),
// one fresh (eps, X1, X2) per pair. Note L2 = (2 eps - 1) L1 pointwise.
struct PairBatch {
  std::vector<double> l1, l2;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string source;
};

PairBatch sample_independence_pair(const DistributionSpec& spec, std::size_t n,
                                   std::uint64_t seed);

namespace serial {
std::pair<SampleBatch, SampleBatch> sample_identity_pair(const TheoremId& theorem,
                                                         const DistributionSpec& spec,
                                                         std::size_t n, std::uint64_t seed);
PairBatch sample_independence_pair(const DistributionSpec& spec, std::size_t n,
                                   std::uint64_t seed);
}  // namespace serial

}  // namespace linform
