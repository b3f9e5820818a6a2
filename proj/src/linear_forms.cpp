#include "linform/linear_forms.hpp"

#include <omp.h>

#include <stdexcept>

namespace linform {

namespace {

constexpr std::size_t kChunk = std::size_t{1} << 16;

// Substream lanes keep lhs, rhs and pair draws disjoint for a given seed.
constexpr std::uint64_t kLaneLhs = 1;
constexpr std::uint64_t kLaneRhs = 2;
constexpr std::uint64_t kLanePair = 3;

std::uint64_t stream_of(std::uint64_t lane, std::size_t chunk) {
  return (lane << 32) | std::uint64_t(chunk);
}

}  // namespace

const char* theorem_name(TheoremId::Kind kind) {
  switch (kind) {
    case TheoremId::Kind::T1: return "t1";
    case TheoremId::Kind::T1A: return "t1a";
    case TheoremId::Kind::T2: return "t2";
    case TheoremId::Kind::T3: return "t3";
    case TheoremId::Kind::T4: return "t4";
  }
  return "?";
}

int theorem_arity(const TheoremId& theorem) {
  switch (theorem.kind) {
    case TheoremId::Kind::T1: return 2;
    case TheoremId::Kind::T1A: return theorem.n;
    case TheoremId::Kind::T2: return 2;
    case TheoremId::Kind::T3: return 3;
    case TheoremId::Kind::T4: return 3;
  }
  return 0;
}

FormPair forms_for(const TheoremId& theorem) {
  FormPair p;
  switch (theorem.kind) {
    case TheoremId::Kind::T1:
      // eps X1  vs  (X1 + X2)/2
      p.lhs.head = eps_bernoulli();
      p.rhs.fixed_head = 0.5;
      p.rhs.tail = {0.5};
      return p;
    case TheoremId::Kind::T1A: {
      if (theorem.n < 2) throw std::invalid_argument("forms_for: T1A needs n >= 2");
      // eps_n X1  vs  X1 + ... + Xn
      p.lhs.head = epsilon_n_pmf(theorem.n);
      p.rhs.fixed_head = 1.0;
      p.rhs.tail.assign(std::size_t(theorem.n) - 1, 1.0);
      return p;
    }
    case TheoremId::Kind::T3:
      // xi X1 + (X2 + X3)/4  vs  (X1 + X2 + X3)/2
      p.lhs.head = xi_half_one();
      p.lhs.tail = {0.25, 0.25};
      p.rhs.fixed_head = 0.5;
      p.rhs.tail = {0.5, 0.5};
      return p;
    case TheoremId::Kind::T4:
      // xi X1 + (X2 + X3)/2  vs  X1 + (X2 + X3)/4
      p.lhs.head = xi_half_one();
      p.lhs.tail = {0.5, 0.5};
      p.rhs.fixed_head = 1.0;
      p.rhs.tail = {0.25, 0.25};
      return p;
    case TheoremId::Kind::T2:
      throw std::invalid_argument("forms_for: T2 is the independence configuration");
  }
  throw std::logic_error("unreachable theorem");
}

namespace {

// Draw order per realization is fixed: coefficient first (if any), then the
// X-copies left to right.
double realize_form(const LinearForm& form, const DistributionSpec& spec, Rng& rng) {
  const double c0 = form.head ? draw_coefficient(*form.head, rng) : form.fixed_head;
  double v = c0 * draw_one(spec, rng);
  for (const double w : form.tail) v += w * draw_one(spec, rng);
  return v;
}

template <bool Parallel>
SampleBatch sample_form(const LinearForm& form, const DistributionSpec& spec, std::size_t n,
                        std::uint64_t seed, std::uint64_t lane, const std::string& source) {
  SampleBatch batch;
  batch.values.resize(n);
  batch.n = n;
  batch.seed = seed;
  batch.source = source;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  const auto fill_chunk = [&](std::size_t c) {
    Rng rng(seed, stream_of(lane, c));
    const std::size_t lo = c * kChunk;
    const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
    for (std::size_t j = lo; j < hi; ++j) batch.values[j] = realize_form(form, spec, rng);
  };
  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(chunks); ++c) fill_chunk(std::size_t(c));
  } else {
    for (std::size_t c = 0; c < chunks; ++c) fill_chunk(c);
  }
  return batch;
}

template <bool Parallel>
std::pair<SampleBatch, SampleBatch> identity_pair_impl(const TheoremId& theorem,
                                                       const DistributionSpec& spec,
                                                       std::size_t n, std::uint64_t seed) {
  if (theorem.kind == TheoremId::Kind::T2)
    throw std::invalid_argument("sample_identity_pair: T2 has no identity pair; use sample_independence_pair");
  if (n < 1) throw std::invalid_argument("sample_identity_pair: n must be >= 1");
  const FormPair forms = forms_for(theorem);
  const std::string base = std::string(theorem_name(theorem.kind)) + " " + describe(spec);
  auto lhs = sample_form<Parallel>(forms.lhs, spec, n, seed, kLaneLhs, base + " lhs");
  auto rhs = sample_form<Parallel>(forms.rhs, spec, n, seed, kLaneRhs, base + " rhs");
  return {std::move(lhs), std::move(rhs)};
}

template <bool Parallel>
PairBatch independence_pair_impl(const DistributionSpec& spec, std::size_t n,
                                 std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_independence_pair: n must be >= 1");
  PairBatch batch;
  batch.l1.resize(n);
  batch.l2.resize(n);
  batch.n = n;
  batch.seed = seed;
  batch.source = std::string("t2 ") + describe(spec);
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  const auto fill_chunk = [&](std::size_t c) {
    Rng rng(seed, stream_of(kLanePair, c));
    const std::size_t lo = c * kChunk;
    const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
    for (std::size_t j = lo; j < hi; ++j) {
      const double e = double(rng.next_bit());
      const double x1 = draw_one(spec, rng);
      const double x2 = draw_one(spec, rng);
      // e in {0,1}: the products and sums below are exact selections.
      batch.l1[j] = e * x1 + (1.0 - e) * x2;
      batch.l2[j] = e * x1 - (1.0 - e) * x2;
    }
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

std::pair<SampleBatch, SampleBatch> sample_identity_pair(const TheoremId& theorem,
                                                         const DistributionSpec& spec,
                                                         std::size_t n, std::uint64_t seed) {
  return identity_pair_impl<true>(theorem, spec, n, seed);
}

PairBatch sample_independence_pair(const DistributionSpec& spec, std::size_t n,
                                   std::uint64_t seed) {
  return independence_pair_impl<true>(spec, n, seed);
}

namespace serial {
std::pair<SampleBatch, SampleBatch> sample_identity_pair(const TheoremId& theorem,
                                                         const DistributionSpec& spec,
                                                         std::size_t n, std::uint64_t seed) {
  return identity_pair_impl<false>(theorem, spec, n, seed);
}

PairBatch sample_independence_pair(const DistributionSpec& spec, std::size_t n,
                                   std::uint64_t seed) {
  return independence_pair_impl<false>(spec, n, seed);
}
}  // namespace serial

}  // namespace linform
