#pragma once

// Counter-based random numbers. Every variate is a pure function of
// (seed, stream, counter), so a parallel loop produces the same values as a
// serial one no matter how work is split across threads.

#include <cstdint>

namespace so3 {

namespace detail {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Named streams keep the samplers from sharing variates under one seed.
enum class StreamTag : std::uint64_t {
  uniform = 1,
  arvo = 2,
  dpp = 3,
  ball_center = 4,
  monte_carlo = 5,
  bootstrap = 6,
};

/// Generator keyed by (seed, tag, index). `index` selects an independent
/// substream, e.g. the point number or the run number.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0)
      : key_(detail::splitmix64(detail::splitmix64(
                 detail::splitmix64(seed) ^ static_cast<std::uint64_t>(tag)) ^
             index)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return detail::splitmix64(key_ ^ detail::splitmix64(counter));
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

/// Sequential view of a CounterRng substream.
class RngStream {
 public:
  constexpr RngStream(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0)
      : rng_(seed, tag, index) {}

  double next_uniform() { return rng_.uniform(counter_++); }
  std::uint64_t next_bits() { return rng_.bits(counter_++); }

  /// Uniform integer in [0, bound) by rejection of the biased tail.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = -bound % bound;
    for (;;) {
      const std::uint64_t r = next_bits();
      if (r >= limit) return r % bound;
    }
  }

  std::uint64_t consumed() const { return counter_; }

 private:
  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace so3
