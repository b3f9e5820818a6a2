#pragma once

#include <cstddef>

// Pairwise (cascade) summation with a fixed split tree. The tree depends only
// on the index range, never on thread count or chunking, so every reduction
// in the library is bit-stable: serial and OpenMP paths add the same numbers
// in the same order.

namespace linform {

template <class F>
double pairwise_sum(std::size_t lo, std::size_t hi, F&& term) {
  const std::size_t n = hi - lo;
  if (n <= 32) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = lo + n / 2;
  return pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term);
}

template <class F>
double pairwise_sum(std::size_t n, F&& term) {
  return pairwise_sum(std::size_t{0}, n, term);
}

}  // namespace linform
