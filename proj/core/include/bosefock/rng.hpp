#ifndef BOSEFOCK_RNG_HPP
#define BOSEFOCK_RNG_HPP

// Counter-based deterministic RNG: every (stream, counter) pair maps to a
// value through a splitmix64-style mixer, so sample i of a Monte Carlo run
// can be generated independently of every other sample.  Results are
// bit-identical for a fixed seed regardless of evaluation order or worker
// count.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace bosefock {

class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Raw 64-bit value at (stream, counter).
  std::uint64_t raw(std::uint64_t stream, std::uint64_t counter) const {
    const std::uint64_t key = mix(seed_ + 0x9e3779b97f4a7c15ull * (stream + 1));
    return mix(key + 0x9e3779b97f4a7c15ull * (counter + 1));
  }

  /// Uniform in (0, 1]; never 0, so it is safe inside log().
  double uniform(std::uint64_t stream, std::uint64_t counter) const {
    return (static_cast<double>(raw(stream, counter) >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Pair of independent standard normals (Box-Muller), consuming counters
  /// 2*k and 2*k+1 of the stream.
  std::pair<double, double> normal_pair(std::uint64_t stream, std::uint64_t k) const {
    const double u1 = uniform(stream, 2 * k);
    const double u2 = uniform(stream, 2 * k + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

private:
  std::uint64_t seed_;
};

} // namespace bosefock

#endif
