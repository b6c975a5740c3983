#include <doctest.h>

#include "growthlab/finfield.hpp"
#include "growthlab/rng.hpp"

using namespace growthlab;

namespace {

// all monic polynomials of the given degree, as code coefficient vectors
std::vector<std::vector<uint32_t>> monics(const std::shared_ptr<const FieldSpec>& k,
                                          int deg) {
  std::vector<std::vector<uint32_t>> out;
  const uint64_t q = k->order();
  std::vector<uint32_t> c(deg + 1, 0);
  c[deg] = 1;
  uint64_t total = 1;
  for (int i = 0; i < deg; ++i) total *= q;
  for (uint64_t n = 0; n < total; ++n) {
    uint64_t t = n;
    for (int i = 0; i < deg; ++i) {
      c[i] = static_cast<uint32_t>(t % q);
      t /= q;
    }
    out.push_back(c);
  }
  return out;
}

// brute squarefreeness: f is not squarefree iff f = g*g*h for some monic g
// of degree >= 1. Uses poly_mul only, independent of gcd/derivative.
bool brute_squarefree(const Poly& f) {
  auto k = f.field;
  int df = f.degree();
  for (int dg = 1; 2 * dg <= df; ++dg) {
    for (auto& gc : monics(k, dg)) {
      Poly g = poly_make(k, gc);
      Poly gg = poly_mul(g, g);
      int dh = df - 2 * dg;
      for (auto& hc : monics(k, dh)) {
        Poly h = poly_make(k, hc);
        Poly prod = poly_mul(gg, h);
        if (prod.coeffs == f.coeffs) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("make_field basics") {
  auto f2 = make_field(2, 1);
  CHECK(f2->order() == 2);
  CHECK(f2->modulus() == std::vector<uint16_t>{0, 1});  // x
  CHECK(f2->add(1, 1) == 0);

  auto f3 = make_field(3, 1);
  CHECK(f3->inv(2) == 2);  // 2*2 = 4 = 1

  auto f5 = make_field(5, 1);
  CHECK(f5->inv(2) == 3);

  CHECK_THROWS_AS(make_field(4, 1), NotPrimeError);
  CHECK_THROWS_AS(make_field(1, 1), NotPrimeError);
  CHECK_THROWS_AS(make_field(0, 2), NotPrimeError);
}

TEST_CASE("F4 modulus is the unique irreducible quadratic") {
  auto f4 = make_field(2, 2);
  CHECK(f4->modulus() == std::vector<uint16_t>{1, 1, 1});  // x^2+x+1

  // oracle: of the four monic quadratics over F2, exactly one has no root
  // and no factorization into two linear factors
  auto f2 = make_field(2, 1);
  int irreducible_count = 0;
  std::vector<uint16_t> the_one;
  for (auto& c : monics(f2, 2)) {
    Poly f = poly_make(f2, c);
    bool has_root = poly_eval(f, 0) == 0 || poly_eval(f, 1) == 0;
    if (!has_root) {
      ++irreducible_count;
      the_one = {static_cast<uint16_t>(c[0]), static_cast<uint16_t>(c[1]),
                 static_cast<uint16_t>(c[2])};
    }
  }
  CHECK(irreducible_count == 1);
  CHECK(the_one == f4->modulus());
}

TEST_CASE("F4 multiplication: x*x = x+1") {
  auto f4 = make_field(2, 2);
  // code 2 = x, code 3 = x+1
  CHECK(f4->mul(2, 2) == 3);
  auto x = fq_from_code(f4, 2);
  auto xx = fq_mul(x, x);
  CHECK(fq_code(xx) == 3);
  CHECK(xx.digits == std::vector<uint16_t>{1, 1});
}

TEST_CASE("multiplicative order: a^(q-1) = 1 for all nonzero a, q <= 64") {
  for (auto [p, f] : std::vector<std::pair<uint32_t, uint32_t>>{
           {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6},
           {3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 1},
           {7, 2}, {11, 1}, {13, 1}, {31, 1}, {61, 1}}) {
    auto k = make_field(p, f);
    for (uint64_t a = 1; a < k->order(); ++a) {
      CHECK(k->pow(static_cast<uint32_t>(a), k->order() - 1) == 1);
      CHECK(k->mul(static_cast<uint32_t>(a), k->inv(static_cast<uint32_t>(a))) == 1);
    }
  }
}

TEST_CASE("Frobenius is additive and multiplicative") {
  Rng rng(12345);
  std::vector<std::shared_ptr<const FieldSpec>> fields = {
      make_field(2, 3), make_field(3, 2), make_field(5, 2), make_field(7, 1)};
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& k = fields[trial % fields.size()];
    uint32_t a = static_cast<uint32_t>(rng.below(k->order()));
    uint32_t b = static_cast<uint32_t>(rng.below(k->order()));
    uint32_t p = k->characteristic();
    CHECK(k->pow(k->add(a, b), p) == k->add(k->pow(a, p), k->pow(b, p)));
    CHECK(k->pow(k->mul(a, b), p) == k->mul(k->pow(a, p), k->pow(b, p)));
  }
}

TEST_CASE("field mismatch is rejected") {
  auto f2 = make_field(2, 1);
  auto f3 = make_field(3, 1);
  auto a = fq_from_code(f2, 1);
  auto b = fq_from_code(f3, 1);
  CHECK_THROWS_AS(fq_add(a, b), FieldMismatchError);
  CHECK_THROWS_AS(fq_mul(a, b), FieldMismatchError);
  CHECK_THROWS_AS(f2->inv(0), DivisionByZeroError);
  auto zero = fq_from_code(f3, 0);
  CHECK_THROWS_AS(fq_inv(zero), DivisionByZeroError);
}

TEST_CASE("poly_gcd worked examples over F3") {
  auto f3 = make_field(3, 1);
  // (x-1)^2 = x^2 + x + 1 over F3 (since -2 = 1); 2(x-1) = 2x + 1
  Poly a = poly_make(f3, {1, 1, 1});
  Poly b = poly_make(f3, {1, 2});
  Poly g = poly_gcd(a, b);
  CHECK(g.coeffs == std::vector<uint32_t>{2, 1});  // x - 1 = x + 2 monic

  // gcd(x^2+1, 2x) = 1
  Poly c = poly_make(f3, {1, 0, 1});
  Poly d = poly_make(f3, {0, 2});
  CHECK(poly_gcd(c, d).coeffs == std::vector<uint32_t>{1});

  // gcd(f, 0) = monic(f)
  Poly z = poly_make(f3, {});
  CHECK(poly_gcd(b, z).coeffs == std::vector<uint32_t>{2, 1});
  CHECK(poly_gcd(z, z).is_zero());
}

TEST_CASE("poly_derivative") {
  auto f2 = make_field(2, 1);
  auto f3 = make_field(3, 1);
  // x^2 over F2 -> 2x = 0
  CHECK(poly_derivative(poly_make(f2, {0, 0, 1})).is_zero());
  // x^2 + 1 over F3 -> 2x
  CHECK(poly_derivative(poly_make(f3, {1, 0, 1})).coeffs ==
        std::vector<uint32_t>{0, 2});
  // constants
  CHECK(poly_derivative(poly_make(f3, {2})).is_zero());
}

TEST_CASE("squarefree detection agrees with brute factorization") {
  for (auto [p, f] : std::vector<std::pair<uint32_t, uint32_t>>{
           {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
    auto k = make_field(p, f);
    for (int deg = 1; deg <= 4; ++deg) {
      for (auto& c : monics(k, deg)) {
        Poly poly = poly_make(k, c);
        CHECK(poly_is_squarefree(poly) == brute_squarefree(poly));
      }
    }
  }
}

TEST_CASE("poly division sanity") {
  auto f5 = make_field(5, 1);
  Rng rng(777);
  for (int t = 0; t < 200; ++t) {
    std::vector<uint32_t> ac((t % 5) + 1), bc((t % 3) + 1);
    for (auto& x : ac) x = static_cast<uint32_t>(rng.below(5));
    for (auto& x : bc) x = static_cast<uint32_t>(rng.below(5));
    Poly a = poly_make(f5, ac);
    Poly b = poly_make(f5, bc);
    if (b.is_zero()) continue;
    auto [q, r] = poly_divmod(a, b);
    CHECK(poly_add(poly_mul(q, b), r).coeffs == a.coeffs);
    CHECK(r.degree() < b.degree());
  }
}

TEST_CASE("Zmod square-free ring") {
  CHECK_THROWS_AS(make_zmod(12), UnsupportedSpecError);
  CHECK_THROWS_AS(make_zmod(9), UnsupportedSpecError);
  CHECK_THROWS_AS(make_zmod(1), UnsupportedSpecError);

  auto z35 = make_zmod(35);
  CHECK(z35->prime_factors() == std::vector<uint32_t>{5, 7});
  CHECK(z35->inv(3) == 12);  // 3*12 = 36 = 1
  CHECK(z35->mul(3, 12) == 1);
  CHECK(!z35->is_unit(5));
  CHECK(z35->is_unit(4));
  CHECK_THROWS_AS(z35->inv(5), NotInvertibleError);

  auto z2 = make_zmod(2);
  CHECK(z2->prime_factors() == std::vector<uint32_t>{2});
}
