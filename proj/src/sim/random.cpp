#include "peertrust/sim/random.hpp"

#include <cmath>

namespace peertrust::sim {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) noexcept {
  std::uint64_t h = basis;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::string_view node_id) noexcept {
  return splitmix64(splitmix64(seed) ^ fnv1a64(node_id));
}

double RandomStream::uniform01() noexcept {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

double RandomStream::exponential(double mean) noexcept {
  return -mean * std::log1p(-uniform01());
}

bool RandomStream::bernoulli(double p) noexcept {
  if (p >= 1.0) {
    return true;
  }
  if (p <= 0.0) {
    return false;
  }
  return uniform01() < p;
}

std::size_t RandomStream::categorical(std::span<const double> probabilities) noexcept {
  const double u = uniform01();
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) {
      continue;
    }
    last_nonzero = i;
    acc += probabilities[i];
    if (u < acc) {
      return i;
    }
  }
  // Rounding left u above the cumulative sum.
  return last_nonzero;
}

}  // namespace peertrust::sim
