#pragma once

#include <optional>

#include "growthlab/product_engine.hpp"

namespace growthlab {

enum class SplitType { split, nonsplit, other };

/// A maximal torus realized extensionally: the centralizer of a regular
/// semisimple element together with its regular part.
struct TorusRecord {
  GroupElement defining;        // regular semisimple a with T = C_L(a)
  ElementSet torus;             // T
  ElementSet regular_part;      // T_r
  uint64_t torus_order = 0;
  /// Brute-filtered when the group fits the cap; otherwise left unknown
  /// rather than approximated.
  std::optional<uint64_t> normalizer_order;
  SplitType split_type = SplitType::other;
};

/// True iff the characteristic polynomial is squarefree, i.e. the element
/// has distinct eigenvalues over the algebraic closure. Field rings only.
bool is_regular_semisimple(const GroupElement& a);

/// {x in L : xa = ax}. Enumeration-backed when |L| <= cap; for SL/GL over a
/// field a solve path is tried instead: the kernel of X -> aX - Xa is
/// computed by elimination and its q^k vectors filtered into the group,
/// allowed when q^k <= cap.
ElementSet centralizer(const GroupElement& a, uint64_t cap);

/// Requires is_regular_semisimple(a). Checks abelianness of the centralizer
/// and fills the regular part. normalizer_order is left unknown (see
/// enumerate_maximal_tori / normalizer_order).
TorusRecord maximal_torus_of(const GroupElement& a, uint64_t cap);

std::optional<uint64_t> normalizer_order(const TorusRecord& t, uint64_t cap);

/// All distinct maximal tori arising as centralizers of regular semisimple
/// elements, deduplicated by their member sets, sorted deterministically.
std::vector<TorusRecord> enumerate_maximal_tori(
    const std::shared_ptr<const GroupSpec>& spec, uint64_t cap);

/// A covers T when A meets the regular part of T.
bool covers(const ElementSet& a, const TorusRecord& t);

/// {x^{-1} a x : x in A}: the slice of cl(a) reachable with conjugators
/// from A.
ElementSet class_conjugates(const GroupElement& a, const ElementSet& conjugators);

}  // namespace growthlab
