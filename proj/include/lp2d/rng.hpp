#pragma once

#include <array>
#include <bit>
#include <cstdint>

// Small deterministic PRNG (xoshiro256++ seeded through splitmix64) so that
// generated instances and permutations are bit-identical across platforms
// and standard-library versions.

namespace lp2d {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class xoshiro256pp {
 public:
  explicit xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double in_range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Uniform integer in [0, n). Multiply-shift with rejection, exact.
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = -n % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::array<std::uint64_t, 4> state_{};
};

/// Stable sub-stream seed for (base, stream) pairs; used to hand each
/// problem/permutation in a batch its own independent stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t st = base ^ (0x9e3779b97f4a7c15ull * (stream + 1));
  splitmix64(st);
  return splitmix64(st);
}

}  // namespace lp2d
