// temporary baseline probe; not part of the project
#include <chrono>
#include <cstdio>

#include "growthlab/experiments.hpp"
#include "growthlab/spectral.hpp"

using namespace growthlab;
using Clock = std::chrono::steady_clock;

static double secs(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

int main() {
  // trichotomy scan SL(2,5), 500 samples, seed 1
  {
    auto t0 = Clock::now();
    ExperimentConfig cfg;
    cfg.spec = GroupSpec::make(Family::SL, 2, make_field(5, 1));
    cfg.samples = 500;
    cfg.seed = 1;
    cfg.group_cap = 1000;
    auto scan = growth_trichotomy_scan(cfg);
    auto t1 = Clock::now();
    printf("trichotomy: saturating=%u min_eps=%.6f at idx=%u", scan.saturating_count,
           scan.min_epsilon.value_or(-1), scan.min_epsilon_index.value_or(0));
    if (scan.min_epsilon_index) {
      auto& s = scan.samples[*scan.min_epsilon_index];
      printf(" sizes=(%llu,%llu,%llu)", (unsigned long long)s.report.size_a,
             (unsigned long long)s.report.size_a2, (unsigned long long)s.report.size_a3);
    }
    printf("  [%.2fs]\n", secs(t0, t1));
    // every sample check
    int bad = 0;
    for (auto& s : scan.samples)
      if (!s.report.a3_is_group.value_or(false) && !(s.report.epsilon_hat() > 0)) ++bad;
    printf("trichotomy violations: %d\n", bad);
  }

  // SL(2,7) tori census
  {
    auto sl27 = GroupSpec::make(Family::SL, 2, make_field(7, 1));
    auto tori = enumerate_maximal_tori(sl27, 1000);
    int split = 0, nonsplit = 0;
    for (auto& t : tori) {
      if (t.split_type == SplitType::split) ++split;
      else if (t.split_type == SplitType::nonsplit) ++nonsplit;
    }
    printf("SL(2,7): %zu tori split=%d nonsplit=%d (expect 49, 28, 21)\n",
           tori.size(), split, nonsplit);
  }

  // diameters SL(2,p) standard pair, p up to 31
  {
    auto t0 = Clock::now();
    for (uint32_t p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
      auto spec = GroupSpec::make(Family::SL, 2, make_field(p, 1));
      auto gens = parse_generators("1,1;0,1\n1,0;1,1", spec);
      ElementSet s = symmetrize(ElementSet::from_elements(gens), true);
      auto bfs = bfs_layers(s, 1u << 20);
      double lg = std::log((double)group_order(*spec));
      printf("p=%u |G|=%llu diam=%d envelope=%.1f\n", p,
             (unsigned long long)group_order(*spec),
             bfs.diameter ? (int)*bfs.diameter : -1, 10.0 * lg * lg);
    }
    printf("diameters total %.2fs\n", secs(t0, Clock::now()));
  }

  // dichotomy SL(2,5) std pair
  {
    auto sl25 = GroupSpec::make(Family::SL, 2, make_field(5, 1));
    auto gens = parse_generators("1,1;0,1\n1,0;1,1", sl25);
    ElementSet a = symmetrize(ElementSet::from_elements(gens), true);
    auto rep = dichotomy_scan(a, 0.05, 1000);
    int covered = 0;
    uint64_t sum_tb = 0, sum_trbb = 0;
    for (auto& r : rep.rows) {
      covered += r.covered ? 1 : 0;
      sum_tb += r.t_cap_b;
      sum_trbb += r.tr_cap_bb;
    }
    printf("dichotomy SL(2,5) pair: rows=%zu covered=%d sum|T∩B|=%llu sum|Tr∩BB|=%llu "
           "K=%.4f nongrowth=%d\n",
           rep.rows.size(), covered, (unsigned long long)sum_tb,
           (unsigned long long)sum_trbb, rep.tripling, (int)rep.nongrowth);
  }

  // spectra: SL(2,5) std pair without identity
  {
    auto sl25 = GroupSpec::make(Family::SL, 2, make_field(5, 1));
    auto gens = parse_generators("1,1;0,1\n1,0;1,1", sl25);
    ElementSet s = symmetrize(ElementSet::from_elements(gens), false);
    auto sr = second_eigenvalue(s, 1e-10, 200000, 42, 1000);
    printf("SL(2,5) pair lambda=%.12f iters=%llu\n", sr.lambda_hat,
           (unsigned long long)sr.iterations);
  }

  // MVW family with spectra
  {
    std::vector<std::vector<int64_t>> S = {{1, 3, 0, 1}, {1, 0, 3, 1}};
    auto t0 = Clock::now();
    auto scan = family_scan(S, 2, {5, 7, 11, 35, 55}, 1e-8, 400000, 200000, 99);
    auto t1 = Clock::now();
    for (auto& e : scan.entries) {
      if (e.spectral)
        printf("m=%u order=%llu lambda=%.12f gap=%.6f iters=%llu\n", e.modulus,
               (unsigned long long)e.mvw.order, e.spectral->lambda_hat,
               e.spectral->gap(), (unsigned long long)e.spectral->iterations);
      else
        printf("m=%u SKIP (surjective=%d)\n", e.modulus, (int)e.mvw.surjective);
    }
    printf("family scan %.2fs min_gap=%.6f\n", secs(t0, t1), scan.min_gap.value_or(-1));
  }

  // structured sets
  {
    auto sl33 = GroupSpec::make(Family::SL, 3, make_field(3, 1));
    Recipe r1{Recipe::Kind::subgroup_plus_element, "", 3};
    auto rep1 = tripling_of_structured_set(sl33, r1);
    printf("SL(3,3) unitriangular+extra: |A|=%llu |A3|=%llu K=%.3f\n",
           (unsigned long long)rep1.size_a, (unsigned long long)rep1.size_a3,
           rep1.tripling());
    auto sl27 = GroupSpec::make(Family::SL, 2, make_field(7, 1));
    Recipe r2{Recipe::Kind::torus_weyl, "", 0};
    auto rep2 = tripling_of_structured_set(sl27, r2);
    printf("SL(2,7) torus+weyl: |A|=%llu |A3|=%llu K=%.3f\n",
           (unsigned long long)rep2.size_a, (unsigned long long)rep2.size_a3,
           rep2.tripling());
    // pure subgroup: unitriangular of SL(2,5) alone should have K=1
    auto sl25 = GroupSpec::make(Family::SL, 2, make_field(5, 1));
    ElementSet uni(sl25);
    for (uint32_t t = 0; t < 5; ++t)
      uni.insert(make_element(sl25, {1, (Scalar)t, 0, 1}));
    auto rep3 = growth_report(uni);
    printf("SL(2,5) unitriangular subgroup: K=%.3f (expect 1)\n", rep3.tripling());
  }

  // gowers pigeonhole probe: |A| > |G|/2 => A^2 = G on SL(2,5)
  {
    auto sl25 = GroupSpec::make(Family::SL, 2, make_field(5, 1));
    auto g = enumerate_group(sl25, 1000);
    auto mats = g.sorted_mats();
    Rng rng(11);
    int ok = 0;
    for (int trial = 0; trial < 20; ++trial) {
      uint64_t size = 61 + rng.below(60);
      // partial Fisher-Yates
      std::vector<uint32_t> idx(mats.size());
      for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      ElementSet a(sl25);
      for (uint64_t i = 0; i < size; ++i) {
        uint64_t j = i + rng.below(idx.size() - i);
        std::swap(idx[i], idx[j]);
        a.insert_mat(mats[idx[i]]);
      }
      auto a2 = product(a, a);
      if (a2.size() == 120) ++ok;
    }
    printf("pigeonhole A^2=G: %d/20\n", ok);
  }
  return 0;
}
