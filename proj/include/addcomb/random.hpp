#pragma once

#include <cstdint>
#include <string_view>

namespace addcomb {

/// Counter-based generator: output i is splitmix64's finalizer applied to
/// seed + (i + 1) * golden_gamma. Stateless apart from the counter, so any
/// draw can be replayed from (seed, index).
class CounterRng {
 public:
  static constexpr std::string_view name = "splitmix64-counter";

  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t at(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() { return at(seed_, counter_++); }

  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace addcomb
