#include <doctest.h>

#include <map>

#include <Eigen/Dense>

#include "growthlab/spectral.hpp"

using namespace growthlab;

namespace {

std::shared_ptr<const GroupSpec> sl(uint32_t d, uint32_t p) {
  return GroupSpec::make(Family::SL, d, make_field(p, 1));
}

// dense oracle: build the normalized walk matrix from the generator set
// directly and read the second-largest eigenvalue off a full symmetric
// eigendecomposition; independent of the power-iteration path
double dense_lambda_hat(const ElementSet& s, uint64_t cap) {
  auto spec = s.spec();
  auto g = enumerate_group(spec, cap);
  auto verts = g.sorted_mats();
  const size_t n = verts.size();
  std::map<Mat, int> index;
  for (size_t i = 0; i < n; ++i) index[verts[i]] = static_cast<int>(i);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double w = 1.0 / double(s.size());
  for (size_t i = 0; i < n; ++i)
    for (const Mat& gen : s.sorted_mats())
      m(index.at(spec->mat_mul(gen, verts[i])), i) += w;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  // eigenvalues ascending; the top one is 1 (constant vector)
  double second = es.eigenvalues()(n - 2);
  return std::fabs(second);
}

ElementSet standard_pair_set(const std::shared_ptr<const GroupSpec>& spec) {
  auto gens = parse_generators("1,1;0,1\n1,0;1,1", spec);
  return symmetrize(ElementSet::from_elements(gens), false);
}

}  // namespace

TEST_CASE("reduce_mod worked examples") {
  std::vector<std::vector<int64_t>> mats = {{1, 3, 0, 1}};
  auto mod3 = reduce_mod(mats, 2, 3);
  CHECK(mod3[0].m == Mat{1, 0, 0, 1});  // 3 = 0 mod 3
  auto mod5 = reduce_mod(mats, 2, 5);
  CHECK(mod5[0].m == Mat{1, 3, 0, 1});

  // CRT consistency: entries mod 35 reduce to the mod-5 and mod-7 entries
  auto mod35 = reduce_mod(mats, 2, 35);
  auto mod7 = reduce_mod(mats, 2, 7);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(mod35[0].m[i] % 5 == mod5[0].m[i]);
    CHECK(mod35[0].m[i] % 7 == mod7[0].m[i]);
  }

  // negative entries reduce into [0, m)
  auto neg = reduce_mod({{1, -1, 0, 1}}, 2, 5);
  CHECK(neg[0].m == Mat{1, 4, 0, 1});

  CHECK_THROWS_AS(reduce_mod({{1, 0, 0, 2}}, 2, 5), DeterminantNotOneError);
}

TEST_CASE("mvw_surjectivity for the entry-3 pair") {
  std::vector<std::vector<int64_t>> s = {{1, 3, 0, 1}, {1, 0, 3, 1}};

  MVWReport m3 = mvw_surjectivity(s, 2, 3, 1u << 20);
  CHECK(!m3.surjective);       // both generators reduce to the identity
  CHECK(m3.closure_size == 1);
  CHECK(m3.order == 24);

  MVWReport m5 = mvw_surjectivity(s, 2, 5, 1u << 20);
  CHECK(m5.surjective);
  CHECK(m5.closure_size == 120);

  MVWReport m35 = mvw_surjectivity(s, 2, 35, 1u << 20);
  CHECK(m35.surjective);
  CHECK(m35.order == 120 * 336);
  REQUIRE(m35.per_prime.size() == 2);
  CHECK(m35.per_prime[0].prime == 5);
  CHECK(m35.per_prime[0].surjective);
  CHECK(m35.per_prime[1].prime == 7);
  CHECK(m35.per_prime[1].surjective);

  CHECK_THROWS_AS(mvw_surjectivity(s, 2, 35, 100), TooLargeError);
}

TEST_CASE("complete graph on SL(2,2): lambda = 1/5") {
  auto s22 = sl(2, 2);
  auto g = enumerate_group(s22, 100);
  ElementSet s(s22);
  g.for_each_mat([&](const Mat& m) {
    if (m != s22->identity()) s.insert_mat(m);
  });
  REQUIRE(s.size() == 5);
  SpectralReport rep = second_eigenvalue(s, 1e-10, 100000, 42, 1000);
  CHECK(rep.lambda_hat == doctest::Approx(0.2).epsilon(1e-8));
  CHECK(rep.gap() == doctest::Approx(0.8).epsilon(1e-8));

  // dense oracle at 6x6 agrees
  CHECK(dense_lambda_hat(s, 1000) == doctest::Approx(0.2).epsilon(1e-10));
}

TEST_CASE("disconnected Cayley graph reports lambda = 1") {
  auto s5 = sl(2, 5);
  ElementSet torus_gen(s5);
  torus_gen.insert(make_element(s5, {2, 0, 0, 3}));
  ElementSet s = symmetrize(torus_gen, false);
  SpectralReport rep = second_eigenvalue(s, 1e-8, 100000, 7, 1000);
  CHECK(rep.lambda_hat == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(!generates(s, 1000));
}

TEST_CASE("power iteration matches the dense oracle") {
  // groups of order <= 2000 with standard generators
  for (uint32_t p : {3u, 5u, 7u, 11u}) {
    auto spec = sl(2, p);
    ElementSet s = standard_pair_set(spec);
    SpectralReport rep = second_eigenvalue(s, 1e-9, 400000, 42, 2000);
    double dense = dense_lambda_hat(s, 2000);
    CHECK(rep.lambda_hat == doctest::Approx(dense).epsilon(1e-6));
    CHECK(rep.lambda_hat < 1.0);
    CHECK(generates(s, 1u << 20));
  }
}

TEST_CASE("SL(2,5) standard pair: frozen regression value") {
  auto s = standard_pair_set(sl(2, 5));
  SpectralReport rep = second_eigenvalue(s, 1e-10, 400000, 42, 1000);
  // frozen by the dense-oracle run; this is cos(pi/5)
  CHECK(rep.lambda_hat == doctest::Approx(0.809016994375).epsilon(1e-9));
}

TEST_CASE("walk operator is symmetric with unit row sums") {
  auto spec = sl(2, 3);
  ElementSet s = standard_pair_set(spec);
  auto g = enumerate_group(spec, 100);
  auto verts = g.sorted_mats();
  const size_t n = verts.size();
  std::map<Mat, int> index;
  for (size_t i = 0; i < n; ++i) index[verts[i]] = static_cast<int>(i);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (size_t i = 0; i < n; ++i)
    for (const Mat& gen : s.sorted_mats())
      m(index.at(spec->mat_mul(gen, verts[i])), i) += 1.0 / double(s.size());
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  CHECK(((m * ones) - ones).cwiseAbs().maxCoeff() <= 1e-12);

  // random-vector symmetry trials
  Rng rng(55);
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd v(n), w(n);
    for (size_t i = 0; i < n; ++i) {
      v(i) = 2.0 * rng.unit() - 1.0;
      w(i) = 2.0 * rng.unit() - 1.0;
    }
    CHECK(std::fabs((m * v).dot(w) - v.dot(m * w)) <= 1e-12);
  }
}

TEST_CASE("lambda < 1 iff the set generates") {
  auto s5 = sl(2, 5);
  ElementSet gen_pair = standard_pair_set(s5);
  SpectralReport r1 = second_eigenvalue(gen_pair, 1e-8, 400000, 1, 1000);
  CHECK(r1.lambda_hat < 1.0);
  CHECK(generates(gen_pair, 1000));

  ElementSet sub(s5);
  sub.insert(make_element(s5, {2, 0, 0, 3}));
  sub = symmetrize(sub, false);
  SpectralReport r2 = second_eigenvalue(sub, 1e-8, 400000, 1, 1000);
  CHECK(r2.lambda_hat == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(!generates(sub, 1000));
}

TEST_CASE("spectral error paths") {
  auto s5 = sl(2, 5);
  ElementSet asym(s5);
  asym.insert(make_element(s5, {1, 1, 0, 1}));
  CHECK_THROWS_AS(second_eigenvalue(asym, 1e-8, 1000, 1, 1000), NotSymmetricError);

  ElementSet s = standard_pair_set(s5);
  CHECK_THROWS_AS(second_eigenvalue(s, 1e-8, 3, 1, 1000), NotConvergedError);
  CHECK_THROWS_AS(second_eigenvalue(s, 1e-8, 1000, 1, 10), TooLargeError);
}

TEST_CASE("family_scan: skip record for failing moduli, gaps for the rest") {
  std::vector<std::vector<int64_t>> s = {{1, 3, 0, 1}, {1, 0, 3, 1}};
  FamilyScan scan = family_scan(s, 2, {3, 5, 7}, 1e-7, 400000, 1u << 20, 9);
  REQUIRE(scan.entries.size() == 3);
  CHECK(!scan.entries[0].spectral.has_value());  // m = 3 skipped
  CHECK(!scan.entries[0].mvw.surjective);
  for (size_t i : {size_t(1), size_t(2)}) {
    REQUIRE(scan.entries[i].spectral.has_value());
    CHECK(scan.entries[i].spectral->gap() > 0.0);
  }
  REQUIRE(scan.min_gap.has_value());
  CHECK(*scan.min_gap > 0.0);
}
