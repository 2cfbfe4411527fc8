#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace ercp {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child seed for stream `index` of `seed`. Used for per-trial, per-attempt
/// and per-class streams: derive_seed(s, i) = mix64(s ^ mix64((i + 1) * golden)).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64((index + 1) * kGolden));
}

/// Counter-based uniform generator: the value at counter c depends only on
/// (key, c), so edges can be sampled in any order or in parallel.
class CounterUniform {
 public:
  explicit constexpr CounterUniform(std::uint64_t seed) : key_(mix64(seed + kGolden)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return mix64(key_ + (counter + 1) * kGolden);
  }

  /// 53-bit uniform integer in [0, 2^53).
  constexpr std::uint64_t bits53(std::uint64_t counter) const { return bits(counter) >> 11; }

  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits53(counter)) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

/// Integer threshold t with: uniform(c) < p  <=>  bits53(c) < t.
inline std::uint64_t retention_threshold(double p) {
  if (!(p > 0.0)) return 0;
  if (p >= 1.0) return std::uint64_t{1} << 53;
  return static_cast<std::uint64_t>(std::ceil(p * 0x1.0p53));
}

/// Sequential engine used wherever order-dependent sampling is fine
/// (generators, Monte Carlo, search).
using Engine = std::mt19937_64;

/// Unbiased integer in [0, bound) (Lemire's multiply-shift with rejection).
/// Independent of the standard library's distribution implementations.
inline std::uint64_t bounded(Engine& rng, std::uint64_t bound) {
  __uint128_t m = static_cast<__uint128_t>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t floor = (0 - bound) % bound;
    while (low < floor) {
      m = static_cast<__uint128_t>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

inline double uniform01(Engine& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <class T>
void shuffle(std::span<T> items, Engine& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace ercp
