#pragma once

// Counter-based random source for the oracles. Every draw is a pure function
// of (seed, stream, counter), so parallel tasks get independent substreams and
// results do not depend on scheduling.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <utility>

namespace hiercoop::oracles {

inline constexpr std::string_view kRngAlgorithm = "splitmix64-counter-v1";

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64_mix(seed + 0x9e3779b97f4a7c15ULL) ^
             splitmix64_mix(stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL)) {}

  std::uint64_t next_u64() { return splitmix64_mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  /// Phase uniform on (0, 2 pi].
  double phase() { return 2.0 * std::numbers::pi * uniform(); }

  /// Pair of independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair() {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double th = phase();
    return {r * std::cos(th), r * std::sin(th)};
  }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace hiercoop::oracles
