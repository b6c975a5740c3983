#pragma once

#include <memory>
#include <unordered_set>
#include <vector>

#include "growthlab/matgroup.hpp"

namespace growthlab {

struct MatHash {
  size_t operator()(const Mat& m) const {
    uint64_t h = 1469598103934665603ULL;  // FNV-1a over entry bytes
    for (Scalar e : m) {
      h = (h ^ (e & 0xFF)) * 1099511628211ULL;
      h = (h ^ (e >> 8)) * 1099511628211ULL;
    }
    return static_cast<size_t>(h);
  }
};

/// Deduplicated set of group elements keyed by canonical bytes.
/// sorted_mats() gives the deterministic iteration order (lexicographic on
/// canonical bytes); the cache is rebuilt lazily, so first access is not
/// safe to race. Internal bulk loops use the unordered storage directly.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::shared_ptr<const GroupSpec> spec)
      : spec_(std::move(spec)) {}
  static ElementSet from_elements(const std::vector<GroupElement>& els);

  const std::shared_ptr<const GroupSpec>& spec() const { return spec_; }
  uint64_t size() const { return set_.size(); }
  bool empty() const { return set_.empty(); }

  /// Trusted canonical input (output of GroupSpec arithmetic).
  bool insert_mat(Mat m);
  bool insert(const GroupElement& g);
  bool contains_mat(const Mat& m) const { return set_.count(m) != 0; }
  bool contains(const GroupElement& g) const;

  const std::vector<Mat>& sorted_mats() const;
  std::vector<GroupElement> sorted_elements() const;

  template <typename Fn>
  void for_each_mat(Fn&& fn) const {
    for (const Mat& m : set_) fn(m);
  }

  uint64_t intersection_size(const ElementSet& other) const;
  ElementSet intersect(const ElementSet& other) const;
  bool operator==(const ElementSet& other) const;

  void reserve(size_t n) { set_.reserve(n); }

 private:
  std::shared_ptr<const GroupSpec> spec_;
  std::unordered_set<Mat, MatHash> set_;
  mutable std::vector<Mat> sorted_cache_;
  mutable bool sorted_valid_ = false;
};

/// Full element set of the group; TooLargeError when the order exceeds cap.
/// Small matrix spaces are scanned directly; larger groups are closed from
/// standard generators (elementary transvections, plus diagonal units for GL).
ElementSet enumerate_group(const std::shared_ptr<const GroupSpec>& spec,
                           uint64_t cap);
/// Memoized immutable variant for the hot paths.
std::shared_ptr<const ElementSet> enumerate_group_shared(
    const std::shared_ptr<const GroupSpec>& spec, uint64_t cap);

namespace detail {
ElementSet enumerate_brute(const std::shared_ptr<const GroupSpec>& spec);
ElementSet enumerate_closure(const std::shared_ptr<const GroupSpec>& spec,
                             uint64_t order);
}  // namespace detail

}  // namespace growthlab
