#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace hmmforge {

/// Reproducible generator. The engine is std::mt19937_64, whose output is fixed
/// by the C++ standard; uniforms are built from the top 53 bits so no
/// implementation-defined distribution is involved. The identifier is stored in
/// every file that depends on a seed.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/u53";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer on [0, n), n > 0, by rejection.
  std::size_t below(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; derives independent sub-seeds from (seed, salt).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept;

}  // namespace hmmforge
