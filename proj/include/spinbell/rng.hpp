#pragma once

// Counter-split random streams. Every consumer derives its own stream from a
// master seed plus an index, so results never depend on evaluation order.

#include <bit>
#include <cstdint>
#include <cstring>
#include <random>
#include <span>

namespace spinbell {

inline constexpr std::uint64_t kDefaultSeed = 0xB311;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// FNV-1a over the raw bytes of a span of doubles (or complex doubles).
template <typename T>
std::uint64_t hash_bytes(std::span<const T> data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  for (std::size_t i = 0; i < data.size_bytes(); ++i) {
    h ^= bytes[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// mt19937_64 with a portable uniform mapping (std:: distributions are
/// implementation-defined, which would break cross-platform bitwise output).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t master, std::uint64_t index) : engine_(derive_seed(master, index)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace spinbell
