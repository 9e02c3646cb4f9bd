#pragma once

#include <cstdint>
#include <limits>

namespace increments::monte_carlo {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: draw k of path i is mix64(key(seed, i) + k * gamma).
/// Each path owns its stream, so paths can be simulated in any order or on
/// any worker with identical results.
class PathStream {
public:
  using result_type = std::uint64_t;

  PathStream(std::uint64_t seed, std::uint64_t path_index) noexcept
      : key_(mix64(mix64(seed) ^ mix64(path_index + kGamma))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    counter_ += kGamma;
    return mix64(key_ + counter_);
  }

  /// Uniform on the open interval (0, 1).
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

} // namespace increments::monte_carlo
