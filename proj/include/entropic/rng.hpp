#pragma once

#include <cstdint>
#include <random>

namespace entropic {

/// Seeded random source handed explicitly to every sampling routine.
/// Uniform draws are built from raw engine bits so a seed fixes the
/// stream independently of the standard library's distribution code.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

  std::mt19937_64& engine() { return engine_; }

  /// Seed of the k-th shard (or sample) of a batch run.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t k) { return seed + k; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace entropic
