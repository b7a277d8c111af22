#pragma once

#include <cstdint>

namespace tvgrav {

/// Counter-based Gaussian stream: the value at (seed, stream, counter) does not
/// depend on draw order, platform or standard-library implementation.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  /// Uniform in (0, 1), never exactly 0 or 1.
  double uniform(std::uint64_t counter) const;
  /// Standard normal via Box-Muller on two decorrelated uniforms.
  double normal(std::uint64_t counter) const;

 private:
  std::uint64_t bits(std::uint64_t counter, std::uint64_t lane) const;

  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace tvgrav
