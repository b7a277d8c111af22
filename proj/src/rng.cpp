#include "tvgrav/rng.hpp"

#include <cmath>
#include <numbers>

namespace tvgrav {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double to_open_unit(std::uint64_t bits) {
  // 53 random bits, shifted off zero
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t counter, std::uint64_t lane) const {
  std::uint64_t h = splitmix64(seed_);
  h = splitmix64(h ^ stream_);
  h = splitmix64(h ^ counter);
  return splitmix64(h ^ lane);
}

double CounterRng::uniform(std::uint64_t counter) const { return to_open_unit(bits(counter, 0)); }

double CounterRng::normal(std::uint64_t counter) const {
  const double u1 = to_open_unit(bits(counter, 1));
  const double u2 = to_open_unit(bits(counter, 2));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace tvgrav
