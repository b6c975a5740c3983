#include "growthlab/torus.hpp"

#include <algorithm>
#include <map>

namespace growthlab {

bool is_regular_semisimple(const GroupElement& a) {
  if (!a.spec->is_field_ring())
    throw UnsupportedRingError("regular semisimplicity needs a field ring");
  Poly cp = char_poly(a);
  return poly_is_squarefree(cp);
}

namespace {

bool commutes(const GroupSpec& spec, const Mat& x, const Mat& a) {
  return spec.mat_mul(x, a) == spec.mat_mul(a, x);
}

// kernel basis of X -> aX - Xa as vectors in ring^(d^2), field rings
std::vector<std::vector<uint32_t>> commutant_kernel(const GroupSpec& spec,
                                                    const Mat& a) {
  const uint32_t d = spec.dim();
  const uint32_t n = d * d;
  const FieldSpec& k = *spec.field();
  // rows: one equation per (i,j); columns: unknowns X[r][s]
  std::vector<std::vector<uint32_t>> m(n, std::vector<uint32_t>(n, 0));
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j) {
      auto& row = m[i * d + j];
      for (uint32_t r = 0; r < d; ++r)
        for (uint32_t s = 0; s < d; ++s) {
          uint32_t coef = 0;
          if (s == j) coef = k.add(coef, a[size_t(i) * d + r]);
          if (r == i) coef = k.sub(coef, a[size_t(s) * d + j]);
          row[r * d + s] = coef;
        }
    }
  // row-reduce
  std::vector<int> pivot_of_col(n, -1);
  uint32_t rank = 0;
  for (uint32_t col = 0; col < n && rank < n; ++col) {
    uint32_t sel = rank;
    while (sel < n && m[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(m[sel], m[rank]);
    uint32_t inv = k.inv(m[rank][col]);
    for (uint32_t c = 0; c < n; ++c) m[rank][c] = k.mul(m[rank][c], inv);
    for (uint32_t r = 0; r < n; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      uint32_t f = m[r][col];
      for (uint32_t c = 0; c < n; ++c)
        m[r][c] = k.sub(m[r][c], k.mul(f, m[rank][c]));
    }
    pivot_of_col[col] = static_cast<int>(rank);
    ++rank;
  }
  std::vector<std::vector<uint32_t>> basis;
  for (uint32_t col = 0; col < n; ++col) {
    if (pivot_of_col[col] != -1) continue;
    std::vector<uint32_t> v(n, 0);
    v[col] = 1;
    for (uint32_t c = 0; c < n; ++c) {
      int pr = pivot_of_col[c];
      if (pr >= 0) v[c] = k.neg(m[pr][col]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

ElementSet centralizer_by_solve(const GroupElement& a, uint64_t cap) {
  const auto& spec = a.spec;
  const FieldSpec& k = *spec->field();
  auto basis = commutant_kernel(*spec, a.m);
  const uint64_t q = k.order();
  unsigned __int128 combos = 1;
  for (size_t i = 0; i < basis.size(); ++i) {
    combos *= q;
    if (combos > cap)
      throw TooLargeError("commutant has q^" + std::to_string(basis.size()) +
                          " points, beyond cap " + std::to_string(cap));
  }
  ElementSet out(spec);
  const uint32_t n = spec->dim() * spec->dim();
  std::vector<uint32_t> coeff(basis.size(), 0);
  Mat x(n);
  for (;;) {
    for (uint32_t c = 0; c < n; ++c) {
      uint32_t acc = 0;
      for (size_t t = 0; t < basis.size(); ++t)
        acc = k.add(acc, k.mul(coeff[t], basis[t][c]));
      x[c] = static_cast<Scalar>(acc);
    }
    uint32_t dt = spec->det(x);
    bool keep = spec->family() == Family::GL ? spec->runit(dt) : dt == 1;
    if (keep) out.insert_mat(x);
    size_t i = 0;
    while (i < coeff.size()) {
      if (++coeff[i] < q) break;
      coeff[i] = 0;
      ++i;
    }
    if (i == coeff.size()) break;
  }
  return out;
}

}  // namespace

ElementSet centralizer(const GroupElement& a, uint64_t cap) {
  const auto& spec = a.spec;
  uint64_t order = 0;
  bool have_order = true;
  try {
    order = group_order(*spec);
  } catch (const UnsupportedSpecError&) {
    have_order = false;
  }
  if (have_order && order <= cap) {
    auto g = enumerate_group_shared(spec, cap);
    ElementSet out(spec);
    g->for_each_mat([&](const Mat& x) {
      if (commutes(*spec, x, a.m)) out.insert_mat(x);
    });
    return out;
  }
  // solve path: only meaningful for SL/GL over a field; the PSL centralizer
  // of a class is not the matrix commutant, so PSL stays enumeration-backed
  if (spec->is_field_ring() && spec->family() != Family::PSL)
    return centralizer_by_solve(a, cap);
  throw TooLargeError("centralizer computation exceeds cap for " + spec->key());
}

TorusRecord maximal_torus_of(const GroupElement& a, uint64_t cap) {
  if (!is_regular_semisimple(a))
    throw NotRegularSemisimpleError("defining element is not regular semisimple");
  TorusRecord rec;
  rec.defining = a;
  rec.regular_part = ElementSet(a.spec);
  rec.torus = centralizer(a, cap);
  const auto& mats = rec.torus.sorted_mats();
  for (size_t i = 0; i < mats.size(); ++i)
    for (size_t j = i + 1; j < mats.size(); ++j)
      if (!commutes(*a.spec, mats[i], mats[j]))
        throw Error("centralizer of a regular semisimple element is not abelian");
  for (const Mat& m : mats) {
    GroupElement e{a.spec, m};
    if (is_regular_semisimple(e)) rec.regular_part.insert_mat(m);
  }
  rec.torus_order = rec.torus.size();
  if (a.spec->is_field_ring()) {
    const uint64_t q = a.spec->field()->order();
    if (rec.torus_order == q - 1)
      rec.split_type = SplitType::split;
    else if (rec.torus_order == q + 1)
      rec.split_type = SplitType::nonsplit;
    else
      rec.split_type = SplitType::other;
  }
  return rec;
}

std::optional<uint64_t> normalizer_order(const TorusRecord& t, uint64_t cap) {
  const auto& spec = t.defining.spec;
  uint64_t order = 0;
  try {
    order = group_order(*spec);
  } catch (const UnsupportedSpecError&) {
    return std::nullopt;
  }
  if (order > cap) return std::nullopt;
  auto g = enumerate_group_shared(spec, cap);
  uint64_t count = 0;
  g->for_each_mat([&](const Mat& x) {
    Mat xi = spec->mat_inv(x);
    bool normalizes = true;
    for (const Mat& m : t.torus.sorted_mats()) {
      Mat conj = spec->mat_mul(spec->mat_mul(x, m), xi);
      if (!t.torus.contains_mat(conj)) {
        normalizes = false;
        break;
      }
    }
    if (normalizes) ++count;
  });
  return count;
}

std::vector<TorusRecord> enumerate_maximal_tori(
    const std::shared_ptr<const GroupSpec>& spec, uint64_t cap) {
  const uint64_t order = group_order(*spec);
  if (order > cap)
    throw TooLargeError("group order " + std::to_string(order) +
                        " exceeds cap " + std::to_string(cap));
  auto g = enumerate_group_shared(spec, cap);
  const auto& all = g->sorted_mats();

  std::vector<Mat> rs;
  for (const Mat& m : all) {
    GroupElement e{spec, m};
    if (is_regular_semisimple(e)) rs.push_back(m);
  }

  // dedup centralizer sets by their sorted member key
  std::map<std::vector<Mat>, Mat> torus_to_witness;
  for (const Mat& a : rs) {
    std::vector<Mat> members;
    for (const Mat& x : all)
      if (commutes(*spec, x, a)) members.push_back(x);
    // sorted already: `all` is sorted and the filter preserves order
    auto it = torus_to_witness.find(members);
    if (it == torus_to_witness.end())
      torus_to_witness.emplace(std::move(members), a);
  }

  std::vector<TorusRecord> records;
  for (const auto& [members, witness] : torus_to_witness) {
    TorusRecord rec;
    rec.defining = GroupElement{spec, witness};
    rec.torus = ElementSet(spec);
    rec.regular_part = ElementSet(spec);
    for (const Mat& m : members) {
      rec.torus.insert_mat(m);
      GroupElement e{spec, m};
      if (is_regular_semisimple(e)) rec.regular_part.insert_mat(m);
    }
    rec.torus_order = rec.torus.size();
    if (spec->is_field_ring()) {
      const uint64_t q = spec->field()->order();
      rec.split_type = rec.torus_order == q - 1   ? SplitType::split
                       : rec.torus_order == q + 1 ? SplitType::nonsplit
                                                  : SplitType::other;
    }
    rec.normalizer_order = normalizer_order(rec, cap);
    records.push_back(std::move(rec));
  }
  return records;
}

bool covers(const ElementSet& a, const TorusRecord& t) {
  if (a.spec() && !a.spec()->equal_specs(*t.defining.spec))
    throw SpecMismatchError("covering query across specs");
  return a.intersection_size(t.regular_part) > 0;
}

ElementSet class_conjugates(const GroupElement& a, const ElementSet& conjugators) {
  if (conjugators.spec() && !conjugators.spec()->equal_specs(*a.spec))
    throw SpecMismatchError("conjugator set over a different spec");
  ElementSet out(a.spec);
  conjugators.for_each_mat([&](const Mat& x) {
    Mat xi = a.spec->mat_inv(x);
    out.insert_mat(a.spec->mat_mul(a.spec->mat_mul(xi, a.m), x));
  });
  return out;
}

}  // namespace growthlab
