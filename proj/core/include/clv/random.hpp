#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

namespace clv {

// splitmix64 finalizer; used to derive independent seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed of substream `stream` of `seed`. Distinct (seed, stream) pairs give
// statistically independent engines, so any substream can be replayed
// without generating the others.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Seedable random source with platform-independent output.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the standard.
/// The standard library distributions are not, so the uniform and normal
/// transforms are done here: uniform() takes the top 53 bits, normal() is
/// Box-Muller with the second variate cached.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  // [0, 1)
  double uniform() noexcept;
  // [lo, hi)
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  double normal() noexcept;
  double normal(double mean, double sd) noexcept { return mean + sd * normal(); }
  // Uniform integer in [0, n); n > 0.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace clv
