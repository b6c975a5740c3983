#pragma once

#include "growthlab/rng.hpp"
#include "growthlab/torus.hpp"

namespace growthlab {

struct ExperimentConfig {
  std::shared_ptr<const GroupSpec> spec;
  /// Non-growth knob: A "does not grow" when |A^3| <= |A|^{1+delta}.
  double delta_nongrowth = 0.05;
  uint32_t samples = 1;
  uint64_t seed = 0;
  uint64_t group_cap = 1ull << 20;
  EngineLimits limits;

  void validate() const;
};

bool nongrowth_verdict(const ElementSet& a, double delta,
                       const EngineLimits& lim = {});

struct DichotomyRow {
  uint32_t torus_id = 0;
  bool covered = false;  // B meets T_r
  uint64_t torus_order = 0;
  uint64_t regular_order = 0;
  uint64_t t_cap_b = 0;      // |T ∩ B|
  uint64_t tr_cap_bb = 0;    // |T_r ∩ BB^{-1}|
  double threshold_uncovered = 0;  // |A|^{1/(d+1) - 1/(d^2-1)}
  double threshold_covered = 0;    // |A|^{1/(d+1)}
  /// measured / threshold for the branch the torus falls in
  double ratio = 0;
  SplitType split_type = SplitType::other;
  std::string defining;  // witness element of the torus, formatted
};

struct DichotomyReport {
  std::string spec_key;
  uint64_t size_a = 0;
  uint64_t size_a3 = 0;
  double tripling = 0;
  bool nongrowth = false;
  double delta = 0;
  std::vector<DichotomyRow> rows;
};

/// Applies the coverage dichotomy to B = AA^{-1} over every maximal torus.
/// Requires that A generates (NotGeneratingError) and |G| <= cap. The rows
/// are measurements against the two thresholds; nothing is asserted, since
/// the comparison constants are not effective.
DichotomyReport dichotomy_scan(const ElementSet& a, double delta, uint64_t cap,
                               const EngineLimits& lim = {});

struct CosetInequalityRecord {
  uint64_t size_a = 0;
  uint64_t conjugate_count = 0;  // t = |{x^{-1} a x : x in A}|
  uint64_t coset_count = 0;      // cosets of C_L(a) meeting A, counted directly
  uint64_t lhs = 0;              // |AA^{-1} ∩ C_L(a)|
  double lower_bound = 0;        // |A| / t
  double class_bound = 0;        // |A|^{(d^2-d)/(d^2-1)}, recorded only
  bool pigeonhole_holds = false; // lhs * t >= |A|, exact integers
};

/// Exact pigeonhole: some coset of C_L(a) holds >= |A|/t elements of A and
/// their quotients land in AA^{-1} ∩ C_L(a). Requires a regular semisimple.
CosetInequalityRecord coset_inequality_check(const GroupElement& a,
                                             const ElementSet& A, uint64_t cap);

struct TrichotomySample {
  uint32_t index = 0;
  uint64_t task_seed = 0;
  std::vector<std::string> generators;  // the sampled core, formatted
  GrowthReport report;
};

struct TrichotomyScan {
  std::vector<TrichotomySample> samples;
  uint32_t saturating_count = 0;           // samples with A^3 = G
  std::optional<double> min_epsilon;       // over non-saturating samples
  std::optional<uint32_t> min_epsilon_index;
};

/// Samples symmetric generating sets (k in {2,3} random elements,
/// symmetrized, identity adjoined, rejected unless generating) and measures
/// growth for each. Samples are independent tasks keyed by per-task seeds,
/// so the scan is reproducible under any scheduling.
TrichotomyScan growth_trichotomy_scan(const ExperimentConfig& config);

ElementSet sample_symmetric_generating_set(
    const std::shared_ptr<const GroupSpec>& spec, Rng& rng, uint32_t k,
    uint64_t cap, std::vector<GroupElement>* picked = nullptr);

struct Recipe {
  enum class Kind {
    subgroup_plus_element,  // upper unitriangular subgroup ∪ one random element
    root_blocks,            // union of all root subgroups I + t E_{ij}
    torus_weyl,             // diagonal torus ∪ a Weyl rotation
    user_file,              // parse_generators on user_text
  };
  Kind kind = Kind::root_blocks;
  std::string user_text;
  uint64_t seed = 0;
};

ElementSet build_structured_set(const std::shared_ptr<const GroupSpec>& spec,
                                const Recipe& recipe);

/// Tripling of a structured set, measured from products of A alone (no full
/// group enumeration required).
GrowthReport tripling_of_structured_set(
    const std::shared_ptr<const GroupSpec>& spec, const Recipe& recipe,
    const EngineLimits& lim = {});

}  // namespace growthlab
