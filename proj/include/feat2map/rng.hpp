#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace feat2map {

// Seedable deterministic generator with named substreams.
//
// A substream is addressed by (label, index) and its seed is derived as
//   splitmix64(splitmix64(base ^ fnv1a64(label)) + index)
// so draws from one stage can never perturb another stage, and adding a new
// stage (new label) leaves existing streams untouched. The engine is
// std::mt19937_64, which the standard pins down bit-exactly; doubles are
// produced from the top 53 bits, so all outputs are portable across
// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)), base_(seed) {}

  Rng stream(std::string_view label, std::uint64_t index = 0) const {
    return Rng(splitmix64(base_ ^ fnv1a64(label)) + index);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [lo, hi). Returns lo when the interval is degenerate.
  double uniform(double lo, double hi) {
    if (!(hi > lo)) return lo;
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

  // Uniform index in [0, n), unbiased via rejection.
  std::size_t uniform_index(std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t bound = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x = next_u64();
    while (x >= bound) x = next_u64();
    return static_cast<std::size_t>(x % span);
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t base_;
};

}  // namespace feat2map
