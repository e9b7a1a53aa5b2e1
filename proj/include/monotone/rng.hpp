#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace monotone {

// Deterministic random source.
//
// The engine is std::mt19937_64, whose output sequence is fully pinned by the
// standard. The distributions are hand-rolled on top of the raw 64-bit output
// because std::uniform_real_distribution and std::normal_distribution are
// implementation-defined and would break byte-identical reports across
// standard libraries. Every randomized operation takes a master seed and
// derives one independent stream per task index, so serial and parallel
// executions of a sweep consume identical streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // In [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller. Consumes exactly two engine steps per
  // call; the offset keeps the log argument strictly positive.
  double normal() {
    double u1 = (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // In {0, ..., n-1}. Bias is below 2^-53 and deterministic.
  std::size_t below(std::size_t n) {
    std::size_t k = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return k >= n ? n - 1 : k;
  }

  // Independent stream for task k, derived from the master seed with a
  // splitmix64 finalizer. Same (seed, k) -> same stream on every platform.
  Rng derive(std::uint64_t k) const { return Rng(mix(seed_, k)); }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (k + 1);
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}
