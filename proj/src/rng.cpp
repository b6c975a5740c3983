#include "growthlab/rng.hpp"

#include "growthlab/errors.hpp"

namespace growthlab {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng Rng::task_stream(uint64_t master_seed, uint64_t task_index) {
  return Rng(splitmix64(master_seed + 0x9E3779B97F4A7C15ULL * (task_index + 1)));
}

uint64_t Rng::below(uint64_t n) {
  if (n == 0) throw PreconditionError("Rng::below(0)");
  if (n == 1) return 0;
  uint64_t mask = ~uint64_t{0};
  mask >>= __builtin_clzll(n - 1);
  for (;;) {
    uint64_t r = eng_() & mask;
    if (r < n) return r;
  }
}

double Rng::unit() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

}  // namespace growthlab
