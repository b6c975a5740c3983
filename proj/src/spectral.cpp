#include "growthlab/spectral.hpp"

#include <cmath>
#include <unordered_map>

namespace growthlab {

SpectralReport second_eigenvalue(const ElementSet& s, double tol,
                                 uint64_t max_iters, uint64_t seed,
                                 uint64_t cap) {
  if (!s.spec() || s.empty())
    throw PreconditionError("spectral estimate needs a nonempty generator set");
  if (!is_symmetric(s)) throw NotSymmetricError("generator set is not symmetric");
  const auto& spec = s.spec();
  const uint64_t order = group_order(*spec);
  if (order > cap)
    throw TooLargeError("group order " + std::to_string(order) +
                        " exceeds cap " + std::to_string(cap));

  auto g = enumerate_group_shared(spec, cap);
  const auto& verts = g->sorted_mats();
  const size_t n = verts.size();
  std::unordered_map<Mat, uint32_t, MatHash> index;
  index.reserve(n);
  for (size_t i = 0; i < n; ++i) index.emplace(verts[i], static_cast<uint32_t>(i));

  const auto& gens = s.sorted_mats();
  const size_t deg = gens.size();
  std::vector<uint32_t> adj(n * deg);
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < deg; ++t)
      adj[i * deg + t] = index.at(spec->mat_mul(gens[t], verts[i]));

  // seeded start vector, constant component removed
  Rng rng(splitmix64(seed ^ 0x5357414C4Bull));
  std::vector<double> v(n), w(n);
  for (auto& x : v) x = 2.0 * rng.unit() - 1.0;

  auto deflate = [n](std::vector<double>& x) {
    double mean = 0.0;
    for (double e : x) mean += e;
    mean /= double(n);
    for (double& e : x) e -= mean;
  };
  auto norm = [](const std::vector<double>& x) {
    double s2 = 0.0;
    for (double e : x) s2 += e * e;
    return std::sqrt(s2);
  };

  deflate(v);
  double nv = norm(v);
  if (nv == 0.0) {
    v[0] = 1.0;
    deflate(v);
    nv = norm(v);
  }
  for (double& e : v) e /= nv;

  const double tol_lazy = tol / 2.0;
  const double inv_deg = 1.0 / double(deg);

  SpectralReport rep;
  rep.spec_key = spec->key();
  rep.graph_order = n;
  rep.s_size = deg;
  rep.tol = tol;
  rep.seed = seed;

  for (uint64_t iter = 1; iter <= max_iters; ++iter) {
    for (size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      const uint32_t* row = &adj[i * deg];
      for (size_t t = 0; t < deg; ++t) acc += v[row[t]];
      w[i] = 0.5 * (v[i] + acc * inv_deg);
    }
    deflate(w);
    double theta = 0.0;
    for (size_t i = 0; i < n; ++i) theta += v[i] * w[i];
    double resid2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double r = w[i] - theta * v[i];
      resid2 += r * r;
    }
    if (std::sqrt(resid2) <= tol_lazy) {
      double lambda = 2.0 * theta - 1.0;
      rep.lambda_hat = std::min(1.0, std::fabs(lambda));
      rep.iterations = iter;
      return rep;
    }
    double nw = norm(w);
    if (nw < 1e-300) {
      // the deflated image collapsed: everything sits at lazy eigenvalue 0
      rep.lambda_hat = 1.0;
      rep.iterations = iter;
      return rep;
    }
    for (size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
  }
  throw NotConvergedError("power iteration did not meet tolerance within " +
                          std::to_string(max_iters) + " iterations");
}

std::vector<GroupElement> reduce_mod(const std::vector<std::vector<int64_t>>& mats,
                                     uint32_t dim, uint32_t m) {
  auto spec = GroupSpec::make(Family::SL, dim, make_zmod(m));
  std::vector<GroupElement> out;
  for (const auto& raw : mats) {
    if (raw.size() != size_t(dim) * dim)
      throw PreconditionError("integer matrix has wrong shape");
    Mat mm(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) {
      int64_t r = raw[i] % int64_t(m);
      if (r < 0) r += m;
      mm[i] = static_cast<Scalar>(r);
    }
    if (spec->det(mm) != 1)
      throw DeterminantNotOneError("matrix determinant is not 1 mod " +
                                   std::to_string(m));
    out.push_back(GroupElement{spec, std::move(mm)});
  }
  return out;
}

MVWReport mvw_surjectivity(const std::vector<std::vector<int64_t>>& s,
                           uint32_t dim, uint32_t m, uint64_t cap) {
  MVWReport rep;
  rep.modulus = m;
  rep.dim = dim;

  auto closure_size_mod = [&](uint32_t modulus, uint64_t& order_out) {
    auto reduced = reduce_mod(s, dim, modulus);
    auto spec = reduced.front().spec;
    order_out = group_order(*spec);
    if (order_out > cap)
      throw TooLargeError("group order " + std::to_string(order_out) +
                          " exceeds cap " + std::to_string(cap));
    ElementSet gens(spec);
    for (const auto& e : reduced) gens.insert(e);
    gens = symmetrize(gens, /*include_identity=*/false);
    return bfs_closure(gens, order_out).size();
  };

  if (s.empty()) throw PreconditionError("empty generator list");
  rep.closure_size = closure_size_mod(m, rep.order);
  rep.surjective = rep.closure_size == rep.order;

  auto zm = make_zmod(m);
  for (uint32_t p : zm->prime_factors()) {
    MVWPrimeVerdict v;
    v.prime = p;
    v.closure_size = closure_size_mod(p, v.order);
    v.surjective = v.closure_size == v.order;
    rep.per_prime.push_back(v);
  }
  return rep;
}

FamilyScan family_scan(const std::vector<std::vector<int64_t>>& s, uint32_t dim,
                       const std::vector<uint32_t>& moduli, double tol,
                       uint64_t max_iters, uint64_t cap, uint64_t seed) {
  FamilyScan scan;
  for (uint32_t m : moduli) {
    FamilyScanEntry entry;
    entry.modulus = m;
    entry.mvw = mvw_surjectivity(s, dim, m, cap);
    if (entry.mvw.surjective) {
      auto reduced = reduce_mod(s, dim, m);
      ElementSet gens(reduced.front().spec);
      for (const auto& e : reduced) gens.insert(e);
      gens = symmetrize(gens, /*include_identity=*/false);
      entry.spectral = second_eigenvalue(gens, tol, max_iters,
                                         splitmix64(seed + m), cap);
      double gap = entry.spectral->gap();
      if (!scan.min_gap || gap < *scan.min_gap) scan.min_gap = gap;
    }
    scan.entries.push_back(std::move(entry));
  }
  return scan;
}

}  // namespace growthlab
