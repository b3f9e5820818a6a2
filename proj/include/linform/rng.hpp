#pragma once

#include <cstddef>
#include <cstdint>
#include <cmath>

// Deterministic pseudorandom streams (xoshiro256++ core, splitmix64 seeding).
//
// The standard <random> engines are portable but the distribution adaptors
// (uniform_real_distribution etc.) are implementation-defined, which would
// break bit-reproducibility across toolchains. Everything here is spelled
// out so a (seed, stream) pair maps to one exact value sequence everywhere.

namespace linform {

// splitmix64 finalizer; also used to derive stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent 64-bit seed for a numbered substream (bootstrap replicates,
// sample chunks, ...). Not just seed+index: adjacent indices must not give
// correlated xoshiro states.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) { init(seed); }

  // Substream (seed, stream): same seed, different stream => independent
  // sequences; results of parallel code stay independent of worker count.
  Rng(std::uint64_t seed, std::uint64_t stream) { init(derive_seed(seed, stream)); }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0,1), 53-bit resolution.
  double next_unit() { return double(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1); safe under log() and logistic inverse CDFs.
  double next_unit_open() { return double(next() >> 11) * 0x1.0p-53 + 0x1.0p-54; }

  // Fair bit.
  std::uint64_t next_bit() { return next() >> 63; }

  // Uniform integer in [0, bound). Lemire multiply-shift; the O(2^-64) bias
  // is irrelevant at test scales and the mapping is deterministic.
  std::uint64_t bounded(std::uint64_t bound) {
    return std::uint64_t((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Standard normal via Box-Muller, cosine branch only: exactly two uniforms
  // consumed per draw, so consumption per realization is fixed.
  double next_normal() {
    const double u1 = next_unit_open();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  void init(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) {
      sm += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = sm;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      w = z ^ (z >> 31);
    }
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero state is absorbing
  }

  std::uint64_t s_[4];
};

// In-place Fisher-Yates; std::shuffle is implementation-defined.
template <class T>
void fisher_yates(T* data, std::size_t n, Rng& rng) {
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = std::size_t(rng.bounded(i));
    T tmp = data[i - 1];
    data[i - 1] = data[j];
    data[j] = tmp;
  }
}

}  // namespace linform
