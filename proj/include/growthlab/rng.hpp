#pragma once

#include <cstdint>
#include <random>

namespace growthlab {

uint64_t splitmix64(uint64_t x);

/// Deterministic random stream. All sampling in the library goes through
/// this wrapper: std::uniform_int_distribution is implementation-defined,
/// so uniform draws are done by masked rejection on raw engine output and
/// reproduce bit-for-bit across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  /// Independent per-task stream derived from a master seed.
  static Rng task_stream(uint64_t master_seed, uint64_t task_index);

  uint64_t next() { return eng_(); }

  /// Uniform in [0, n). n must be >= 1.
  uint64_t below(uint64_t n);

  /// Uniform double in [0, 1).
  double unit();

 private:
  std::mt19937_64 eng_;
};

}  // namespace growthlab
