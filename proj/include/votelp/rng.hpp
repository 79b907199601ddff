#pragma once

#include <cstdint>

namespace votelp {

/// SplitMix64. Chosen over std::mt19937_64 + distributions because its output
/// is fully specified, so seeded runs produce byte-identical artifacts on any
/// platform. Substreams are derived by key mixing rather than by sharing one
/// sequence, so sampling order never depends on loop structure.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in {0, ..., n-1}, unbiased via rejection sampling.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = ~0ull - ~0ull % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream key from (seed, salt); nest calls to key
/// streams by tuples such as (seed, repeat, candidate).
inline std::uint64_t mix_key(std::uint64_t seed, std::uint64_t salt) {
  SplitMix64 g(seed ^ (salt + 0x632be59bd9b4e019ull) * 0x9e3779b97f4a7c15ull);
  g.next();
  return g.next();
}

}  // namespace votelp
