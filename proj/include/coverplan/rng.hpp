#pragma once

#include <cstdint>
#include <random>

namespace coverplan {

// Seeded random source built on mt19937_64 (its output sequence is pinned by
// the standard). Uniform mappings are spelled out here instead of using
// std::uniform_*_distribution, whose results vary across implementations --
// instances must be reproducible bit-for-bit from (seed) alone.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // in [0, 1)
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // unbiased integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return v % n;
  }

  int index(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

private:
  std::mt19937_64 eng_;
};

}  // namespace coverplan
