#include <doctest.h>

#include "growthlab/experiments.hpp"

using namespace growthlab;

namespace {

std::shared_ptr<const GroupSpec> sl(uint32_t d, uint32_t p) {
  return GroupSpec::make(Family::SL, d, make_field(p, 1));
}

ElementSet standard_pair_set(const std::shared_ptr<const GroupSpec>& spec) {
  auto gens = parse_generators("1,1;0,1\n1,0;1,1", spec);
  return symmetrize(ElementSet::from_elements(gens), true);
}

}  // namespace

TEST_CASE("nongrowth_verdict") {
  auto s3 = sl(2, 3);
  auto g = enumerate_group(s3, 100);
  CHECK(nongrowth_verdict(g, 0.05));  // K = 1

  // a subgroup triples to itself
  auto s5 = sl(2, 5);
  ElementSet torus = bfs_closure(
      symmetrize([&] {
        ElementSet t(s5);
        t.insert(make_element(s5, {2, 0, 0, 3}));
        return t;
      }(), true),
      1000);
  CHECK(nongrowth_verdict(torus, 0.05));

  // seeded random generating set of SL(2,7) grows well past delta = 0.05
  auto s7 = sl(2, 7);
  Rng rng(2);
  ElementSet a = sample_symmetric_generating_set(s7, rng, 2, 1000);
  CHECK(!nongrowth_verdict(a, 0.05));

  ElementSet single(s3);
  single.insert_mat(s3->identity());
  CHECK_THROWS_AS(nongrowth_verdict(single, 0.05), PreconditionError);
}

TEST_CASE("dichotomy_scan with A = G covers every torus") {
  auto s3 = sl(2, 3);
  auto g = enumerate_group(s3, 1000);
  DichotomyReport rep = dichotomy_scan(g, 0.05, 1000);
  CHECK(rep.rows.size() == 3);
  CHECK(rep.nongrowth);
  for (const auto& r : rep.rows) {
    CHECK(r.covered);
    CHECK(r.t_cap_b == r.torus_order);        // B = G meets all of T
    CHECK(r.tr_cap_bb == r.regular_order);    // BB^{-1} = G meets all of T_r
  }
}

TEST_CASE("dichotomy_scan SL(2,5) standard pair: frozen regression") {
  auto s5 = sl(2, 5);
  ElementSet a = standard_pair_set(s5);
  DichotomyReport rep = dichotomy_scan(a, 0.05, 1000);
  CHECK(rep.spec_key == "SL:2:5");
  CHECK(rep.size_a == 5);
  CHECK(rep.rows.size() == 25);
  CHECK(!rep.nongrowth);
  CHECK(rep.tripling == doctest::Approx(8.6));

  // frozen by the exhaustive oracle run
  int covered = 0;
  uint64_t sum_tb = 0, sum_trbb = 0;
  for (const auto& r : rep.rows) {
    covered += r.covered ? 1 : 0;
    sum_tb += r.t_cap_b;
    sum_trbb += r.tr_cap_bb;
  }
  CHECK(covered == 2);
  CHECK(sum_tb == 29);
  CHECK(sum_trbb == 54);

  // d = 2 degeneration: the uncovered threshold exponent is 1/3 - 1/3 = 0
  for (const auto& r : rep.rows) {
    CHECK(r.threshold_uncovered == doctest::Approx(1.0));
    CHECK(r.threshold_covered == doctest::Approx(std::pow(5.0, 1.0 / 3.0)));
  }
}

TEST_CASE("dichotomy_scan monotone in A") {
  auto s5 = sl(2, 5);
  ElementSet a = standard_pair_set(s5);
  ElementSet bigger = product(a, a);
  DichotomyReport small = dichotomy_scan(a, 0.05, 1000);
  DichotomyReport large = dichotomy_scan(bigger, 0.05, 1000);
  REQUIRE(small.rows.size() == large.rows.size());
  for (size_t i = 0; i < small.rows.size(); ++i) {
    CHECK(large.rows[i].t_cap_b >= small.rows[i].t_cap_b);
    CHECK(large.rows[i].tr_cap_bb >= small.rows[i].tr_cap_bb);
  }
}

TEST_CASE("dichotomy_scan rejects non-generating sets") {
  auto s5 = sl(2, 5);
  ElementSet torus(s5);
  torus.insert(make_element(s5, {2, 0, 0, 3}));
  CHECK_THROWS_AS(dichotomy_scan(symmetrize(torus, true), 0.05, 1000),
                  NotGeneratingError);
}

TEST_CASE("coset_inequality_check worked examples") {
  auto s5 = sl(2, 5);
  auto a = make_element(s5, {2, 0, 0, 3});

  // A = C_L(a): t = 1, lhs = |C|
  ElementSet cent = centralizer(a, 1000);
  CosetInequalityRecord r1 = coset_inequality_check(a, cent, 1000);
  CHECK(r1.conjugate_count == 1);
  CHECK(r1.coset_count == 1);
  CHECK(r1.lhs == cent.size());
  CHECK(r1.pigeonhole_holds);

  // A = {I, a}: t = 1, lhs >= 2
  ElementSet ia(s5);
  ia.insert_mat(s5->identity());
  ia.insert(a);
  CosetInequalityRecord r2 = coset_inequality_check(a, ia, 1000);
  CHECK(r2.conjugate_count == 1);
  CHECK(r2.lhs >= 2);
  CHECK(r2.pigeonhole_holds);

  CHECK_THROWS_AS(coset_inequality_check(g_identity(s5), ia, 1000),
                  NotRegularSemisimpleError);
}

TEST_CASE("coset_inequality_check on random SL(3,3) draws") {
  auto s33 = sl(3, 3);
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    GroupElement a = random_element(s33, rng);
    while (!is_regular_semisimple(a)) a = random_element(s33, rng);
    ElementSet A(s33);
    while (A.size() < 50) A.insert(random_element(s33, rng));
    CosetInequalityRecord rec = coset_inequality_check(a, A, 10000);
    CHECK(rec.pigeonhole_holds);
    CHECK(rec.conjugate_count == rec.coset_count);
    CHECK(double(rec.lhs) >= rec.lower_bound);
  }
}

TEST_CASE("growth_trichotomy_scan: seeded run, dichotomy of outcomes") {
  ExperimentConfig cfg;
  cfg.spec = sl(2, 5);
  cfg.samples = 60;
  cfg.seed = 1;
  cfg.group_cap = 1000;
  TrichotomyScan scan = growth_trichotomy_scan(cfg);
  REQUIRE(scan.samples.size() == 60);
  for (const auto& s : scan.samples) {
    CHECK(s.report.is_symmetric);
    bool saturates = s.report.a3_is_group.value_or(false);
    CHECK((saturates || s.report.epsilon_hat() > 0.0));
  }
}

TEST_CASE("growth_trichotomy_scan is reproducible") {
  ExperimentConfig cfg;
  cfg.spec = sl(2, 5);
  cfg.samples = 40;
  cfg.seed = 123;
  cfg.group_cap = 1000;
  TrichotomyScan a = growth_trichotomy_scan(cfg);
  TrichotomyScan b = growth_trichotomy_scan(cfg);
  REQUIRE(a.samples.size() == b.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].report.size_a == b.samples[i].report.size_a);
    CHECK(a.samples[i].report.size_a3 == b.samples[i].report.size_a3);
    CHECK(a.samples[i].generators == b.samples[i].generators);
  }
  CHECK(a.min_epsilon == b.min_epsilon);
  CHECK(a.saturating_count == b.saturating_count);
}

TEST_CASE("experiment config validation") {
  ExperimentConfig cfg;
  cfg.spec = sl(2, 5);
  cfg.samples = 0;
  CHECK_THROWS_AS(cfg.validate(), PreconditionError);
  cfg.samples = 1;
  cfg.delta_nongrowth = 1.5;
  CHECK_THROWS_AS(cfg.validate(), PreconditionError);
  cfg.delta_nongrowth = 0.05;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("structured sets") {
  // a subgroup alone has K = 1
  auto s5 = sl(2, 5);
  ElementSet uni(s5);
  for (uint16_t t = 0; t < 5; ++t)
    uni.insert(make_element(s5, {1, t, 0, 1}));
  CHECK(growth_report(uni).tripling() == 1.0);

  // unitriangular + one extra element in SL(3,3): frozen regression
  auto s33 = sl(3, 3);
  Recipe r1{Recipe::Kind::subgroup_plus_element, "", 3};
  GrowthReport rep1 = tripling_of_structured_set(s33, r1);
  CHECK(rep1.size_a == 28);   // 27 unitriangular + 1 extra
  CHECK(rep1.size_a3 == 780);

  // torus with a Weyl rotation in SL(2,7): frozen regression
  auto s7 = sl(2, 7);
  Recipe r2{Recipe::Kind::torus_weyl, "", 0};
  GrowthReport rep2 = tripling_of_structured_set(s7, r2);
  CHECK(rep2.size_a == 7);   // 6 torus elements + rotation
  CHECK(rep2.size_a3 == 12);
  CHECK(rep2.tripling() > 1.0);

  // all root subgroups of SL(2,5): the transvections
  Recipe r3{Recipe::Kind::root_blocks, "", 0};
  ElementSet roots = build_structured_set(s5, r3);
  CHECK(roots.size() == 9);  // I plus 4 nontrivial entries in each corner

  // user file recipe
  Recipe r4{Recipe::Kind::user_file, "1,1;0,1\n1,0;1,1", 0};
  ElementSet user = build_structured_set(s5, r4);
  CHECK(user.size() == 2);
}
