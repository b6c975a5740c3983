#include "growthlab/element_set.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

namespace growthlab {

ElementSet ElementSet::from_elements(const std::vector<GroupElement>& els) {
  if (els.empty()) return ElementSet();
  ElementSet out(els.front().spec);
  for (const auto& e : els) out.insert(e);
  return out;
}

bool ElementSet::insert_mat(Mat m) {
  bool fresh = set_.insert(std::move(m)).second;
  if (fresh) sorted_valid_ = false;
  return fresh;
}

bool ElementSet::insert(const GroupElement& g) {
  if (!spec_) spec_ = g.spec;
  if (!spec_->equal_specs(*g.spec))
    throw SpecMismatchError("element spec " + g.spec->key() +
                            " does not match set spec " + spec_->key());
  return insert_mat(g.m);
}

bool ElementSet::contains(const GroupElement& g) const {
  if (!spec_ || !spec_->equal_specs(*g.spec))
    throw SpecMismatchError("membership query across specs");
  return contains_mat(g.m);
}

const std::vector<Mat>& ElementSet::sorted_mats() const {
  if (!sorted_valid_) {
    sorted_cache_.assign(set_.begin(), set_.end());
    std::sort(sorted_cache_.begin(), sorted_cache_.end());
    sorted_valid_ = true;
  }
  return sorted_cache_;
}

std::vector<GroupElement> ElementSet::sorted_elements() const {
  std::vector<GroupElement> out;
  out.reserve(set_.size());
  for (const Mat& m : sorted_mats()) out.push_back(GroupElement{spec_, m});
  return out;
}

uint64_t ElementSet::intersection_size(const ElementSet& other) const {
  const ElementSet& small = size() <= other.size() ? *this : other;
  const ElementSet& big = size() <= other.size() ? other : *this;
  if (small.spec_ && big.spec_ && !small.spec_->equal_specs(*big.spec_))
    throw SpecMismatchError("intersection across specs");
  uint64_t n = 0;
  small.for_each_mat([&](const Mat& m) { n += big.contains_mat(m) ? 1 : 0; });
  return n;
}

ElementSet ElementSet::intersect(const ElementSet& other) const {
  const ElementSet& small = size() <= other.size() ? *this : other;
  const ElementSet& big = size() <= other.size() ? other : *this;
  if (small.spec_ && big.spec_ && !small.spec_->equal_specs(*big.spec_))
    throw SpecMismatchError("intersection across specs");
  ElementSet out(spec_ ? spec_ : other.spec_);
  small.for_each_mat([&](const Mat& m) {
    if (big.contains_mat(m)) out.insert_mat(m);
  });
  return out;
}

bool ElementSet::operator==(const ElementSet& other) const {
  if (size() != other.size()) return false;
  if (spec_ && other.spec_ && !spec_->equal_specs(*other.spec_)) return false;
  bool all = true;
  for_each_mat([&](const Mat& m) {
    if (!other.contains_mat(m)) all = false;
  });
  return all;
}

namespace detail {

namespace {
constexpr uint64_t kBruteWorkLimit = 50'000'000;

uint64_t pow_u64_sat(uint64_t b, uint32_t e) {
  unsigned __int128 acc = 1;
  for (uint32_t i = 0; i < e; ++i) {
    acc *= b;
    if (acc > kBruteWorkLimit) return UINT64_MAX;
  }
  return static_cast<uint64_t>(acc);
}
}  // namespace

ElementSet enumerate_brute(const std::shared_ptr<const GroupSpec>& spec) {
  const uint32_t d = spec->dim();
  const uint64_t rs = spec->ring_size();
  const size_t n = size_t(d) * d;
  ElementSet out(spec);
  Mat m(n, 0);
  for (;;) {
    uint32_t dt = spec->det(m);
    bool keep = false;
    switch (spec->family()) {
      case Family::SL: keep = dt == 1; break;
      case Family::GL: keep = spec->runit(dt); break;
      case Family::PSL: keep = dt == 1; break;
    }
    if (keep) {
      Mat c = spec->canonicalize(m);
      out.insert_mat(std::move(c));
    }
    // odometer
    size_t i = 0;
    while (i < n) {
      if (++m[i] < rs) break;
      m[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

ElementSet enumerate_closure(const std::shared_ptr<const GroupSpec>& spec,
                             uint64_t order) {
  const uint32_t d = spec->dim();
  std::vector<Mat> gens;
  // elementary transvections I + x^t E_{ij}; over Z/m the entry 1 suffices
  uint32_t basis_count = 1;
  if (spec->is_field_ring()) basis_count = spec->field()->degree();
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j) {
      if (i == j) continue;
      for (uint32_t t = 0; t < basis_count; ++t) {
        Mat g = spec->identity();
        uint64_t code = 1;
        if (spec->is_field_ring())
          for (uint32_t k = 0; k < t; ++k) code *= spec->field()->characteristic();
        g[size_t(i) * d + j] = static_cast<Scalar>(code);
        gens.push_back(spec->canonicalize(std::move(g)));
      }
    }
  if (spec->family() == Family::GL) {
    for (uint64_t u = 2; u < spec->ring_size(); ++u) {
      if (!spec->runit(static_cast<uint32_t>(u))) continue;
      Mat g = spec->identity();
      g[0] = static_cast<Scalar>(u);
      gens.push_back(std::move(g));
    }
  }

  ElementSet visited(spec);
  visited.reserve(order);
  visited.insert_mat(spec->identity());
  std::vector<Mat> frontier{spec->identity()};
  std::vector<Mat> next;
  while (!frontier.empty()) {
    next.clear();
    for (const Mat& g : frontier)
      for (const Mat& s : gens) {
        Mat prod = spec->mat_mul(g, s);
        if (visited.contains_mat(prod)) continue;
        next.push_back(prod);
        visited.insert_mat(std::move(prod));
      }
    frontier.swap(next);
  }
  if (visited.size() != order)
    throw Error("generator closure has size " + std::to_string(visited.size()) +
                ", expected " + std::to_string(order));
  return visited;
}

}  // namespace detail

ElementSet enumerate_group(const std::shared_ptr<const GroupSpec>& spec,
                           uint64_t cap) {
  const uint64_t order = group_order(*spec);
  if (order > cap)
    throw TooLargeError("group order " + std::to_string(order) +
                        " exceeds cap " + std::to_string(cap));
  const uint64_t work =
      detail::pow_u64_sat(spec->ring_size(), spec->dim() * spec->dim());
  if (work <= detail::kBruteWorkLimit) return detail::enumerate_brute(spec);
  if (spec->family() == Family::PSL) {
    // close the SL generators, then canonicalize classwise
    auto sl = GroupSpec::make(Family::SL, spec->dim(), spec->field());
    ElementSet raw = detail::enumerate_closure(sl, group_order(*sl));
    ElementSet out(spec);
    raw.for_each_mat([&](const Mat& m) { out.insert_mat(spec->canonicalize(m)); });
    if (out.size() != order) throw Error("PSL canonicalization miscounted");
    return out;
  }
  return detail::enumerate_closure(spec, order);
}

std::shared_ptr<const ElementSet> enumerate_group_shared(
    const std::shared_ptr<const GroupSpec>& spec, uint64_t cap) {
  static std::mutex mtx;
  static std::unordered_map<std::string, std::shared_ptr<const ElementSet>> cache;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(spec->key());
    if (it != cache.end()) {
      if (it->second->size() > cap)
        throw TooLargeError("group order " + std::to_string(it->second->size()) +
                            " exceeds cap " + std::to_string(cap));
      return it->second;
    }
  }
  auto built = std::make_shared<ElementSet>(enumerate_group(spec, cap));
  built->sorted_mats();  // freeze the deterministic order before sharing
  std::lock_guard<std::mutex> lock(mtx);
  auto [it, _] = cache.emplace(spec->key(), std::move(built));
  return it->second;
}

}  // namespace growthlab
