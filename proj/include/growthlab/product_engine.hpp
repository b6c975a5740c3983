#pragma once

#include <optional>
#include <string>
#include <vector>

#include "growthlab/element_set.hpp"

namespace growthlab {

struct EngineLimits {
  /// Hard cap on the size of any expanded set; exceeding it raises
  /// MemoryCapError instead of exhausting memory.
  uint64_t memory_cap = 8ull * 1000 * 1000;
  /// 0 = pick from hardware concurrency.
  unsigned threads = 0;
};

/// {a*b : a in A, b in B}, deduplicated. The left operand is partitioned
/// into blocks processed independently; block results merge by set union,
/// so the outcome is independent of scheduling.
ElementSet product(const ElementSet& a, const ElementSet& b,
                   const EngineLimits& lim = {});

ElementSet inverse_set(const ElementSet& a);
ElementSet symmetrize(const ElementSet& a, bool include_identity);
bool is_symmetric(const ElementSet& a);

struct GrowthReport {
  std::string spec_key;
  uint64_t size_a = 0;
  uint64_t size_a2 = 0;
  uint64_t size_a3 = 0;
  bool is_symmetric = false;
  /// Only set when the group order is computable for the spec.
  std::optional<bool> a3_is_group;

  /// Tripling constant K = |A^3| / |A|.
  double tripling() const {
    return size_a ? double(size_a3) / double(size_a) : 0.0;
  }
  /// log|A^3| / log|A| - 1; reported as 0 for |A| <= 1 so degenerate
  /// inputs never divide by zero.
  double epsilon_hat() const;
};

GrowthReport growth_report(const ElementSet& a, const EngineLimits& lim = {});

/// Closure of <gens> under multiplication, aborting past max_size.
ElementSet bfs_closure(const ElementSet& gens, uint64_t max_size);

struct BfsResult {
  /// Cumulative ball sizes |S^1|, |S^2|, ... with the identity adjoined to
  /// S, so S^k counts all words of length <= k.
  std::vector<uint64_t> ball_sizes;
  uint64_t closure_size = 0;
  /// First k with |S^k| = |G|; unset when S does not generate.
  std::optional<uint32_t> diameter;
};

/// Requires S symmetric (NotSymmetricError) and |G| <= cap (TooLargeError).
BfsResult bfs_layers(const ElementSet& s, uint64_t cap);

/// True iff the BFS closure of symmetrize(A) is the whole group.
bool generates(const ElementSet& a, uint64_t cap);

/// Requires |A| > |G|^{1-delta} (PreconditionError otherwise); returns
/// whether A^3 = G.
bool gowers_regime_check(const ElementSet& a, double delta,
                         const EngineLimits& lim = {});

}  // namespace growthlab
