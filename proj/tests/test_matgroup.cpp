#include <doctest.h>

#include <map>

#include "growthlab/element_set.hpp"

using namespace growthlab;

namespace {

// test-local brute enumeration over a prime field: raw integer loops and the
// explicit determinant formula, independent of the library's paths
uint64_t brute_sl_count(uint32_t d, uint32_t p) {
  uint64_t total = 1;
  for (uint32_t i = 0; i < d * d; ++i) total *= p;
  uint64_t count = 0;
  std::vector<uint32_t> e(d * d, 0);
  for (uint64_t n = 0; n < total; ++n) {
    uint64_t t = n;
    for (uint32_t i = 0; i < d * d; ++i) {
      e[i] = static_cast<uint32_t>(t % p);
      t /= p;
    }
    uint64_t det;
    if (d == 2) {
      det = (uint64_t(e[0]) * e[3] + uint64_t(p) * p - uint64_t(e[1]) * e[2]) % p;
    } else {  // d == 3, Leibniz
      uint64_t pos = uint64_t(e[0]) * e[4] % p * e[8] % p +
                     uint64_t(e[1]) * e[5] % p * e[6] % p +
                     uint64_t(e[2]) * e[3] % p * e[7] % p;
      uint64_t neg = uint64_t(e[2]) * e[4] % p * e[6] % p +
                     uint64_t(e[0]) * e[5] % p * e[7] % p +
                     uint64_t(e[1]) * e[3] % p * e[8] % p;
      det = (pos % p + 3 * uint64_t(p) - neg % p) % p;
    }
    if (det == 1) ++count;
  }
  return count;
}

std::shared_ptr<const GroupSpec> sl(uint32_t d, uint32_t p, uint32_t f = 1) {
  return GroupSpec::make(Family::SL, d, make_field(p, f));
}

}  // namespace

TEST_CASE("g_mul basics") {
  auto s = sl(2, 3);
  auto i = g_identity(s);
  auto u = make_element(s, {1, 1, 0, 1});
  CHECK(g_eq(g_mul(i, u), u));
  auto uu = g_mul(u, u);
  CHECK(uu.m == Mat{1, 2, 0, 1});

  auto s5 = sl(2, 5);
  auto v = make_element(s5, {1, 1, 0, 1});
  CHECK_THROWS_AS(g_mul(u, v), SpecMismatchError);
}

TEST_CASE("PSL scalar classes collapse") {
  auto p3 = GroupSpec::make(Family::PSL, 2, make_field(3, 1));
  // -x and x canonicalize identically
  auto x = make_element(p3, {1, 1, 0, 1});
  auto neg_x = make_element(p3, {2, 2, 0, 2});
  CHECK(x.m == neg_x.m);
  auto y = make_element(p3, {0, 2, 1, 0});
  CHECK(g_eq(g_mul(x, y), g_mul(neg_x, y)));
  CHECK_THROWS_AS(GroupSpec::make(Family::PSL, 2, make_zmod(6)), UnsupportedSpecError);
}

TEST_CASE("g_inv worked examples and random round trips") {
  auto s5 = sl(2, 5);
  auto i = g_identity(s5);
  CHECK(g_eq(g_inv(i), i));
  auto u = make_element(s5, {1, 1, 0, 1});
  CHECK(g_inv(u).m == Mat{1, 4, 0, 1});

  Rng rng(9);
  for (auto spec : {sl(2, 5), sl(3, 3), sl(2, 3, 2),
                    GroupSpec::make(Family::PSL, 2, make_field(7, 1)),
                    GroupSpec::make(Family::GL, 2, make_field(5, 1))}) {
    for (int t = 0; t < 50; ++t) {
      auto x = random_element(spec, rng);
      CHECK(g_mul(x, g_inv(x)).m == spec->identity());
    }
  }

  // an unchecked non-unit determinant over Z/6 has no inverse
  auto gl_z6 = GroupSpec::make(Family::GL, 2, make_zmod(6));
  GroupElement bad{gl_z6, Mat{2, 0, 0, 1}};  // det 2, not a unit mod 6
  CHECK_THROWS_AS(g_inv(bad), NotInvertibleError);
}

TEST_CASE("char_poly worked examples") {
  auto s3 = sl(2, 3);
  auto i = g_identity(s3);
  CHECK(char_poly(i).coeffs == std::vector<uint32_t>{1, 1, 1});  // (x-1)^2 over F3

  auto a = make_element(s3, {0, 2, 1, 0});
  CHECK(char_poly(a).coeffs == std::vector<uint32_t>{1, 0, 1});  // x^2 + 1

  auto s5 = sl(2, 5);
  auto d23 = make_element(s5, {2, 0, 0, 3});
  CHECK(char_poly(d23).coeffs == std::vector<uint32_t>{1, 0, 1});  // tr 0, det 1

  auto z6 = GroupSpec::make(Family::SL, 2, make_zmod(6));
  GroupElement ez{z6, z6->identity()};
  CHECK_THROWS_AS(char_poly(ez), UnsupportedRingError);
}

TEST_CASE("char_poly is conjugation invariant") {
  Rng rng(4);
  for (auto spec : {sl(2, 7), sl(3, 3)}) {
    for (int t = 0; t < 100; ++t) {
      auto a = random_element(spec, rng);
      auto g = random_element(spec, rng);
      auto conj = g_mul(g_mul(g_inv(g), a), g);
      CHECK(char_poly(conj).coeffs == char_poly(a).coeffs);
    }
  }
}

TEST_CASE("determinant matches the explicit small formulas") {
  Rng rng(21);
  auto s3 = sl(3, 5);
  const uint32_t p = 5;
  for (int t = 0; t < 200; ++t) {
    Mat e(9);
    for (auto& x : e) x = static_cast<Scalar>(rng.below(p));
    uint64_t pos = uint64_t(e[0]) * e[4] % p * e[8] % p +
                   uint64_t(e[1]) * e[5] % p * e[6] % p +
                   uint64_t(e[2]) * e[3] % p * e[7] % p;
    uint64_t neg = uint64_t(e[2]) * e[4] % p * e[6] % p +
                   uint64_t(e[0]) * e[5] % p * e[7] % p +
                   uint64_t(e[1]) * e[3] % p * e[8] % p;
    uint32_t expected = static_cast<uint32_t>((pos % p + 3 * uint64_t(p) - neg % p) % p);
    CHECK(s3->det(e) == expected);
  }
}

TEST_CASE("group_order formulas vs enumeration and brute counting") {
  CHECK(group_order(*sl(2, 2)) == 6);
  CHECK(group_order(*sl(2, 3)) == 24);
  CHECK(group_order(*sl(2, 5)) == 120);
  CHECK(group_order(*sl(3, 3)) == 5616);
  CHECK(group_order(*GroupSpec::make(Family::PSL, 2, make_field(3, 1))) == 12);
  CHECK(group_order(*GroupSpec::make(Family::PSL, 2, make_field(7, 1))) == 168);

  // brute-count oracle, raw loops
  CHECK(brute_sl_count(2, 2) == 6);
  CHECK(brute_sl_count(2, 3) == 24);
  CHECK(brute_sl_count(2, 5) == 120);
  CHECK(brute_sl_count(3, 3) == 5616);

  // formula vs enumeration across specs with order <= 1e5
  std::vector<std::shared_ptr<const GroupSpec>> specs = {
      sl(2, 2), sl(2, 3), sl(2, 2, 2), sl(2, 5), sl(2, 7), sl(2, 3, 2),
      sl(3, 3),
      GroupSpec::make(Family::PSL, 2, make_field(3, 1)),
      GroupSpec::make(Family::PSL, 2, make_field(5, 1)),
      GroupSpec::make(Family::PSL, 2, make_field(3, 2)),
      GroupSpec::make(Family::GL, 2, make_field(3, 1)),
      GroupSpec::make(Family::GL, 2, make_field(5, 1)),
      GroupSpec::make(Family::SL, 2, make_zmod(6)),
      GroupSpec::make(Family::SL, 2, make_zmod(10)),
      GroupSpec::make(Family::SL, 2, make_zmod(15)),
  };
  for (const auto& spec : specs) {
    auto g = enumerate_group(spec, 200000);
    CHECK(g.size() == group_order(*spec));
    // spot-validate members
    auto mats = g.sorted_mats();
    for (size_t i = 0; i < mats.size(); i += 17) spec->validate(mats[i]);
  }

  CHECK_THROWS_AS(group_order(*GroupSpec::make(Family::GL, 2, make_zmod(6))),
                  UnsupportedSpecError);
  CHECK_THROWS_AS(enumerate_group(sl(2, 31), 100), TooLargeError);
}

TEST_CASE("brute scan and closure enumeration agree") {
  for (auto spec : {sl(2, 5), sl(2, 7), sl(2, 2, 2),
                    GroupSpec::make(Family::SL, 2, make_zmod(10)),
                    GroupSpec::make(Family::GL, 2, make_field(2, 2))}) {
    auto a = detail::enumerate_brute(spec);
    auto b = detail::enumerate_closure(spec, group_order(*spec));
    CHECK(a == b);
  }
}

TEST_CASE("enumerate_group examples") {
  CHECK(enumerate_group(sl(2, 2), 100).size() == 6);
  CHECK(enumerate_group(GroupSpec::make(Family::PSL, 2, make_field(3, 1)), 100).size() == 12);
  CHECK(enumerate_group(sl(2, 5), 1000).size() == 120);
}

TEST_CASE("random_element determinism and invariants") {
  auto s5 = sl(2, 5);
  Rng a(42), b(42);
  for (int t = 0; t < 200; ++t) {
    auto x = random_element(s5, a);
    auto y = random_element(s5, b);
    CHECK(x.m == y.m);
    CHECK(s5->det(x.m) == 1);
  }
  auto p7 = GroupSpec::make(Family::PSL, 2, make_field(7, 1));
  Rng c(3);
  for (int t = 0; t < 100; ++t) {
    auto x = random_element(p7, c);
    CHECK(x.m == p7->canonicalize(x.m));
  }
  auto z6 = GroupSpec::make(Family::SL, 2, make_zmod(6));
  Rng d(1);
  CHECK_THROWS_AS(random_element(z6, d), UnsupportedRingError);
}

TEST_CASE("random_element uniformity (chi-square on SL(2,3))") {
  auto s3 = sl(2, 3);
  auto g = enumerate_group(s3, 100);
  auto mats = g.sorted_mats();
  std::map<Mat, int> counts;
  Rng rng(2024);
  const int n = 100000;
  for (int t = 0; t < n; ++t) ++counts[random_element(s3, rng).m];
  double expected = double(n) / 24.0;
  double chi2 = 0.0;
  for (const auto& m : mats) {
    double diff = counts[m] - expected;
    chi2 += diff * diff / expected;
  }
  // 0.999 quantile of chi-square with 23 degrees of freedom
  CHECK(chi2 < 49.728);
}

TEST_CASE("canonical bytes equality coincides with group equality") {
  auto s5 = sl(2, 5);
  Rng rng(8);
  for (int t = 0; t < 10000; ++t) {
    auto x = random_element(s5, rng);
    auto y = random_element(s5, rng);
    CHECK((canonical_bytes(x.m) == canonical_bytes(y.m)) == (x.m == y.m));
  }
  // PSL: scalar multiples share bytes
  auto p5 = GroupSpec::make(Family::PSL, 2, make_field(5, 1));
  for (int t = 0; t < 1000; ++t) {
    auto x = random_element(p5, rng);
    Mat scaled(x.m.size());
    for (size_t i = 0; i < x.m.size(); ++i)
      scaled[i] = static_cast<Scalar>(p5->rmul(4, x.m[i]));  // -1 = 4
    CHECK(canonical_bytes(p5->canonicalize(scaled)) == canonical_bytes(x.m));
  }
}

TEST_CASE("canonical byte order matches Mat order") {
  Rng rng(5);
  auto s = sl(2, 7);
  for (int t = 0; t < 1000; ++t) {
    auto x = random_element(s, rng);
    auto y = random_element(s, rng);
    CHECK((x.m < y.m) == (canonical_bytes(x.m) < canonical_bytes(y.m)));
  }
}

TEST_CASE("parse_generators grammar") {
  auto s5 = sl(2, 5);
  auto v = parse_generators("1,1;0,1", s5);
  REQUIRE(v.size() == 1);
  CHECK(v[0].m == Mat{1, 1, 0, 1});

  CHECK_THROWS_AS(parse_generators("1,0;0,2", s5), InvariantViolationError);
  CHECK(parse_generators("", s5).empty());
  CHECK(parse_generators("# only a comment\n\n", s5).empty());

  // comments and blank lines between matrices
  auto w = parse_generators("# pair\n1,1;0,1\n\n1,0;1,1 # trailing\n", s5);
  CHECK(w.size() == 2);

  // malformed shapes carry positions
  try {
    parse_generators("1,1;0,1\n1,1,0;0,1,0", s5);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_generators("1,7;0,1", s5), ParseError);   // out of range
  CHECK_THROWS_AS(parse_generators("1,x;0,1", s5), ParseError);
  CHECK_THROWS_AS(parse_generators("1,1;0", s5), ParseError);

  // extension-field digit lists: 1.2 = 1 + 2x in F9
  auto s9 = sl(2, 3, 2);
  auto e = parse_generators("1,1.2;0,1", s9);
  REQUIRE(e.size() == 1);
  CHECK(e[0].m == Mat{1, 7, 0, 1});  // code 1 + 2*3 = 7
  CHECK(format_matrix(*s9, e[0].m) == "1.0,1.2;0.0,1.0");
  CHECK_THROWS_AS(parse_generators("1,1.3;0,1", s9), ParseError);  // digit >= p

  // round trip through format_matrix
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    auto x = random_element(s9, rng);
    auto back = parse_generators(format_matrix(*s9, x.m), s9);
    REQUIRE(back.size() == 1);
    CHECK(back[0].m == x.m);
  }
}

TEST_CASE("parse_integer_matrices") {
  auto v = parse_integer_matrices("1,3;0,1\n-1,0;7,-1", 2);
  REQUIRE(v.size() == 2);
  CHECK(v[1] == std::vector<int64_t>{-1, 0, 7, -1});
  CHECK_THROWS_AS(parse_integer_matrices("1,2;3", 2), ParseError);
  CHECK(parse_integer_matrices("", 2).empty());
}
