#include "growthlab/experiments.hpp"

#include <cmath>
#include <mutex>
#include <thread>

namespace growthlab {

void ExperimentConfig::validate() const {
  if (!spec) throw PreconditionError("experiment config has no group spec");
  if (!(delta_nongrowth > 0.0 && delta_nongrowth < 1.0))
    throw PreconditionError("delta must lie in (0,1)");
  if (samples < 1) throw PreconditionError("sample count must be >= 1");
}

bool nongrowth_verdict(const ElementSet& a, double delta,
                       const EngineLimits& lim) {
  if (a.size() < 2) throw PreconditionError("non-growth verdict needs |A| >= 2");
  ElementSet a2 = product(a, a, lim);
  ElementSet a3 = product(a2, a, lim);
  long double bound = std::pow((long double)a.size(), 1.0L + (long double)delta);
  return (long double)a3.size() <= bound;
}

DichotomyReport dichotomy_scan(const ElementSet& a, double delta, uint64_t cap,
                               const EngineLimits& lim) {
  const auto& spec = a.spec();
  if (!spec) throw PreconditionError("dichotomy scan on an empty-spec set");
  if (!generates(a, cap))
    throw NotGeneratingError("the scanned set does not generate the group");

  DichotomyReport rep;
  rep.spec_key = spec->key();
  rep.size_a = a.size();
  rep.delta = delta;

  ElementSet a2 = product(a, a, lim);
  ElementSet a3 = product(a2, a, lim);
  rep.size_a3 = a3.size();
  rep.tripling = a.size() ? double(a3.size()) / double(a.size()) : 0.0;
  long double bound = std::pow((long double)a.size(), 1.0L + (long double)delta);
  rep.nongrowth = (long double)a3.size() <= bound;

  // the dichotomy is applied to B = AA^{-1} (symmetric by construction)
  ElementSet b = product(a, inverse_set(a), lim);
  ElementSet bb = product(b, b, lim);

  const uint32_t d = spec->dim();
  const double exp_cov = 1.0 / (d + 1);
  const double exp_unc = exp_cov - 1.0 / (double(d) * d - 1.0);
  const double thr_unc = std::pow(double(a.size()), exp_unc);
  const double thr_cov = std::pow(double(a.size()), exp_cov);

  auto tori = enumerate_maximal_tori(spec, cap);
  uint32_t id = 0;
  for (const auto& t : tori) {
    DichotomyRow row;
    row.torus_id = id++;
    row.covered = covers(b, t);
    row.torus_order = t.torus_order;
    row.regular_order = t.regular_part.size();
    row.t_cap_b = t.torus.intersection_size(b);
    row.tr_cap_bb = t.regular_part.intersection_size(bb);
    row.threshold_uncovered = thr_unc;
    row.threshold_covered = thr_cov;
    row.ratio = row.covered ? double(row.tr_cap_bb) / thr_cov
                            : double(row.t_cap_b) / thr_unc;
    row.split_type = t.split_type;
    row.defining = format_matrix(*spec, t.defining.m);
    rep.rows.push_back(row);
  }
  return rep;
}

CosetInequalityRecord coset_inequality_check(const GroupElement& a,
                                             const ElementSet& A, uint64_t cap) {
  if (!is_regular_semisimple(a))
    throw NotRegularSemisimpleError("pigeonhole check needs a regular semisimple");
  const auto& spec = a.spec;

  CosetInequalityRecord rec;
  rec.size_a = A.size();

  ElementSet conj = class_conjugates(a, A);
  rec.conjugate_count = conj.size();

  ElementSet c = centralizer(a, cap);
  ElementSet aainv = product(A, inverse_set(A));
  rec.lhs = aainv.intersection_size(c);

  // cosets C x meeting A, counted via the lexicographically least coset
  // representative of each x
  ElementSet coset_keys(spec);
  A.for_each_mat([&](const Mat& x) {
    Mat best;
    c.for_each_mat([&](const Mat& cm) {
      Mat cand = spec->mat_mul(cm, x);
      if (best.empty() || cand < best) best = std::move(cand);
    });
    coset_keys.insert_mat(std::move(best));
  });
  rec.coset_count = coset_keys.size();

  rec.lower_bound = rec.conjugate_count
                        ? double(rec.size_a) / double(rec.conjugate_count)
                        : 0.0;
  const uint32_t d = spec->dim();
  rec.class_bound = std::pow(double(rec.size_a),
                             (double(d) * d - d) / (double(d) * d - 1.0));
  rec.pigeonhole_holds = rec.lhs * rec.conjugate_count >= rec.size_a;
  return rec;
}

ElementSet sample_symmetric_generating_set(
    const std::shared_ptr<const GroupSpec>& spec, Rng& rng, uint32_t k,
    uint64_t cap, std::vector<GroupElement>* picked) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<GroupElement> core;
    for (uint32_t i = 0; i < k; ++i) core.push_back(random_element(spec, rng));
    ElementSet s(spec);
    for (const auto& e : core) s.insert(e);
    s = symmetrize(s, /*include_identity=*/true);
    if (generates(s, cap)) {
      if (picked) *picked = std::move(core);
      return s;
    }
  }
  throw Error("failed to sample a generating set after 1000 attempts");
}

TrichotomyScan growth_trichotomy_scan(const ExperimentConfig& config) {
  config.validate();
  const uint64_t order = group_order(*config.spec);
  if (order > config.group_cap)
    throw TooLargeError("group order " + std::to_string(order) +
                        " exceeds cap " + std::to_string(config.group_cap));

  TrichotomyScan scan;
  scan.samples.resize(config.samples);

  auto run_sample = [&](uint32_t i) {
    Rng rng = Rng::task_stream(config.seed, i);
    TrichotomySample& out = scan.samples[i];
    out.index = i;
    out.task_seed = splitmix64(config.seed + 0x9E3779B97F4A7C15ULL * (i + 1));
    uint32_t k = 2 + static_cast<uint32_t>(rng.below(2));
    std::vector<GroupElement> picked;
    ElementSet s = sample_symmetric_generating_set(config.spec, rng, k,
                                                   config.group_cap, &picked);
    for (const auto& e : picked)
      out.generators.push_back(format_matrix(*config.spec, e.m));
    out.report = growth_report(s, config.limits);
  };

  unsigned hw = std::thread::hardware_concurrency();
  unsigned threads = std::min<unsigned>(hw ? hw : 1, config.samples);
  if (threads <= 1) {
    for (uint32_t i = 0; i < config.samples; ++i) run_sample(i);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr fail;
    std::mutex fail_mtx;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (uint32_t i = t; i < config.samples; i += threads) run_sample(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(fail_mtx);
          if (!fail) fail = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    if (fail) std::rethrow_exception(fail);
  }

  for (const auto& s : scan.samples) {
    if (s.report.a3_is_group.value_or(false)) {
      ++scan.saturating_count;
      continue;
    }
    double eps = s.report.epsilon_hat();
    if (!scan.min_epsilon || eps < *scan.min_epsilon) {
      scan.min_epsilon = eps;
      scan.min_epsilon_index = s.index;
    }
  }
  return scan;
}

namespace {

// all strictly upper unitriangular matrices
void fill_unitriangular(const GroupSpec& spec, ElementSet& out) {
  const uint32_t d = spec.dim();
  const uint64_t q = spec.ring_size();
  std::vector<std::pair<uint32_t, uint32_t>> slots;
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = i + 1; j < d; ++j) slots.emplace_back(i, j);
  std::vector<uint64_t> odo(slots.size(), 0);
  for (;;) {
    Mat m = spec.identity();
    for (size_t t = 0; t < slots.size(); ++t)
      m[size_t(slots[t].first) * d + slots[t].second] =
          static_cast<Scalar>(odo[t]);
    out.insert_mat(spec.canonicalize(std::move(m)));
    size_t i = 0;
    while (i < odo.size()) {
      if (++odo[i] < q) break;
      odo[i] = 0;
      ++i;
    }
    if (i == odo.size()) break;
  }
}

}  // namespace

ElementSet build_structured_set(const std::shared_ptr<const GroupSpec>& spec,
                                const Recipe& recipe) {
  const uint32_t d = spec->dim();
  ElementSet out(spec);
  switch (recipe.kind) {
    case Recipe::Kind::subgroup_plus_element: {
      fill_unitriangular(*spec, out);
      Rng rng(recipe.seed);
      for (int i = 0; i < 100; ++i) {
        GroupElement extra = random_element(spec, rng);
        if (!out.contains_mat(extra.m)) {
          out.insert_mat(extra.m);
          break;
        }
      }
      break;
    }
    case Recipe::Kind::root_blocks: {
      const uint64_t q = spec->ring_size();
      for (uint32_t i = 0; i < d; ++i)
        for (uint32_t j = 0; j < d; ++j) {
          if (i == j) continue;
          for (uint64_t t = 0; t < q; ++t) {
            Mat m = spec->identity();
            m[size_t(i) * d + j] = static_cast<Scalar>(t);
            out.insert_mat(spec->canonicalize(std::move(m)));
          }
        }
      break;
    }
    case Recipe::Kind::torus_weyl: {
      if (!spec->is_field_ring())
        throw UnsupportedRingError("torus recipe needs a field ring");
      const FieldSpec& k = *spec->field();
      const uint64_t units = k.order() - 1;
      // diag(t_1, ..., t_{d-1}, (t_1...t_{d-1})^{-1})
      std::vector<uint64_t> odo(d - 1, 0);
      for (;;) {
        Mat m(size_t(d) * d, 0);
        uint32_t prod = 1;
        for (uint32_t i = 0; i < d - 1; ++i) {
          uint32_t u = static_cast<uint32_t>(odo[i] + 1);  // codes 1..q-1
          m[size_t(i) * d + i] = static_cast<Scalar>(u);
          prod = k.mul(prod, u);
        }
        m[size_t(d - 1) * d + (d - 1)] = static_cast<Scalar>(k.inv(prod));
        out.insert_mat(spec->canonicalize(std::move(m)));
        size_t i = 0;
        while (i < odo.size()) {
          if (++odo[i] < units) break;
          odo[i] = 0;
          ++i;
        }
        if (i == odo.size()) break;
      }
      // Weyl rotation: the d-cycle permutation matrix, first row negated
      // when the cycle is odd so the determinant is 1
      Mat w(size_t(d) * d, 0);
      for (uint32_t i = 0; i < d; ++i) w[size_t(i) * d + ((i + 1) % d)] = 1;
      if (d % 2 == 0) w[1] = static_cast<Scalar>(k.neg(w[1]));
      spec->validate(spec->canonicalize(w));
      out.insert_mat(spec->canonicalize(std::move(w)));
      break;
    }
    case Recipe::Kind::user_file: {
      for (const auto& e : parse_generators(recipe.user_text, spec))
        out.insert(e);
      break;
    }
  }
  return out;
}

GrowthReport tripling_of_structured_set(
    const std::shared_ptr<const GroupSpec>& spec, const Recipe& recipe,
    const EngineLimits& lim) {
  ElementSet set = build_structured_set(spec, recipe);
  return growth_report(set, lim);
}

}  // namespace growthlab
