#pragma once

#include <cstdint>
#include <random>

namespace mvrpb {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of an independent sub-stream, e.g. one per period or per replicate.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Uniform integer in [0, n). Rejection sampling keeps the result identical
/// across standard library implementations, unlike std::uniform_int_distribution.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  // 2^64 mod n values at the top of the range are rejected
  const std::uint64_t excess = (Rng::max() % n + 1) % n;
  const std::uint64_t limit = Rng::max() - excess;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % n;
}

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

}  // namespace mvrpb
