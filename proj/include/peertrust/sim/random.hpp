#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace peertrust::sim {

/// FNV-1a 64-bit over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of the substream owned by `node_id` in a run seeded with `seed`.
/// Depends only on the pair, so adding nodes leaves other streams intact.
std::uint64_t substream_seed(std::uint64_t seed, std::string_view node_id) noexcept;

/// Deterministic random source. The engine is std::mt19937_64; the
/// distributions are written out here because the standard ones are not
/// required to produce the same sequence across library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept;
  double uniform(double lo, double hi) noexcept;
  double exponential(double mean) noexcept;
  bool bernoulli(double p) noexcept;
  /// Index drawn with the given probabilities (assumed to sum to 1).
  std::size_t categorical(std::span<const double> probabilities) noexcept;

 private:
  std::mt19937_64 engine_;
};

}  // namespace peertrust::sim
