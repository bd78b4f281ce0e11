#pragma once

#include <cstdint>

namespace ucem {

// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Top 53 bits -> [0, 1).
constexpr double u64_to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Sequential splitmix64 stream. Used for scenario placement; the raw
// 64-bit path keeps regeneration bit-identical across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return mix64(state_ += 0x9e3779b97f4a7c15ULL); }
  double uniform01() { return u64_to_unit(next()); }

 private:
  std::uint64_t state_;
};

// Stateless draw keyed by (seed, a, b). The simulator keys slot draws by
// (slot, node), so any batch partition reproduces the serial stream.
inline double counter_uniform01(std::uint64_t seed, std::uint64_t a,
                                std::uint64_t b) {
  std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ (a + 0xbf58476d1ce4e5b9ULL));
  h = mix64(h ^ (b + 0x94d049bb133111ebULL));
  return u64_to_unit(h);
}

}  // namespace ucem
