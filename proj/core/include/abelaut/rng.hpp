#pragma once

#include <cstdint>
#include <random>

namespace abelaut {

/// Seeded RNG with platform-independent output. mt19937_64 has standardized
/// output for a given seed; the bounded draw below avoids
/// uniform_int_distribution, whose mapping is implementation-defined.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform value in [0, bound), bound >= 1, by rejection sampling.
  std::uint32_t below(std::uint32_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return static_cast<std::uint32_t>(x % bound);
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace abelaut
