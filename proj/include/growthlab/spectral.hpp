#pragma once

#include <optional>

#include "growthlab/product_engine.hpp"

namespace growthlab {

struct SpectralReport {
  std::string spec_key;
  uint64_t graph_order = 0;
  uint64_t s_size = 0;
  /// Modulus of the dominant non-constant eigenvalue of the normalized
  /// walk operator, obtained through the lazy transform (I+M)/2 and
  /// converted back via lambda = 2*mu - 1. In [0, 1].
  double lambda_hat = 0.0;
  uint64_t iterations = 0;
  double tol = 0.0;
  uint64_t seed = 0;

  double gap() const { return 1.0 - lambda_hat; }
  double cheeger_lower() const { return gap() / 2.0; }
};

/// Power iteration on the lazy walk (I+M)/2 of the Cayley graph
/// Gamma(G, S), with the constant vector deflated each step. The lazy
/// spectrum is nonnegative, so plain power iteration targets the dominant
/// non-constant eigenvalue even for bipartite-like spectra. The residual
/// test guarantees |lambda_hat - lambda| <= tol on return; running past
/// max_iters raises NotConvergedError rather than returning a silent
/// estimate. Requires S = S^{-1} (NotSymmetricError) and |G| <= cap.
SpectralReport second_eigenvalue(const ElementSet& s, double tol,
                                 uint64_t max_iters, uint64_t seed,
                                 uint64_t cap);

/// Entries reduced into [0, m); DeterminantNotOneError unless det = 1 mod m.
std::vector<GroupElement> reduce_mod(const std::vector<std::vector<int64_t>>& mats,
                                     uint32_t dim, uint32_t m);

struct MVWPrimeVerdict {
  uint32_t prime = 0;
  uint64_t closure_size = 0;
  uint64_t order = 0;
  bool surjective = false;
};

struct MVWReport {
  uint32_t modulus = 0;
  uint32_t dim = 0;
  uint64_t closure_size = 0;
  uint64_t order = 0;
  bool surjective = false;
  std::vector<MVWPrimeVerdict> per_prime;
};

/// BFS closure of the symmetrized reduction of S mod m against
/// |SL(d, Z/mZ)| = prod_p |SL(d, p)|, plus one verdict per prime factor.
MVWReport mvw_surjectivity(const std::vector<std::vector<int64_t>>& s,
                           uint32_t dim, uint32_t m, uint64_t cap);

struct FamilyScanEntry {
  uint32_t modulus = 0;
  MVWReport mvw;
  /// Unset when the modulus was skipped because reduction is not onto.
  std::optional<SpectralReport> spectral;
};

struct FamilyScan {
  std::vector<FamilyScanEntry> entries;
  std::optional<double> min_gap;
};

FamilyScan family_scan(const std::vector<std::vector<int64_t>>& s, uint32_t dim,
                       const std::vector<uint32_t>& moduli, double tol,
                       uint64_t max_iters, uint64_t cap, uint64_t seed);

}  // namespace growthlab
