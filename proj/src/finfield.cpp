#include "growthlab/finfield.hpp"

#include <algorithm>
#include <numeric>

namespace growthlab {

namespace {

constexpr uint64_t kMaxQ = 65535;    // codes must fit uint16
constexpr uint64_t kTableMaxQ = 1024;  // add/mul lookup tables below this

// --- polynomial helpers over F_p used during field construction ---
// coefficient vectors low-degree-first, entries in [0, p)

// remainder of a / b, both monic-agnostic, b nonzero
std::vector<uint32_t> prime_poly_rem(std::vector<uint32_t> a,
                                     const std::vector<uint32_t>& b,
                                     uint32_t p) {
  const size_t db = b.size() - 1;
  const uint32_t lead_inv = [&] {
    // inverse of b's leading coefficient mod p by Fermat
    uint32_t base = b.back() % p, acc = 1;
    for (uint32_t e = p - 2; e; e >>= 1) {
      if (e & 1) acc = static_cast<uint32_t>(uint64_t(acc) * base % p);
      base = static_cast<uint32_t>(uint64_t(base) * base % p);
    }
    return acc;
  }();
  while (a.size() > db && !a.empty()) {
    uint32_t c = static_cast<uint32_t>(uint64_t(a.back()) * lead_inv % p);
    if (c != 0) {
      size_t shift = a.size() - 1 - db;
      for (size_t i = 0; i <= db; ++i) {
        uint64_t sub = uint64_t(c) * b[i] % p;
        a[shift + i] = static_cast<uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.size() <= db) break;
  }
  return a;
}

bool prime_poly_divides(const std::vector<uint32_t>& divisor,
                        const std::vector<uint32_t>& poly, uint32_t p) {
  return prime_poly_rem(poly, divisor, p).empty();
}

// trial factorization: no monic divisor of degree 1..f/2
bool is_irreducible_mod_p(const std::vector<uint32_t>& poly, uint32_t p) {
  const size_t f = poly.size() - 1;
  for (size_t deg = 1; deg + deg <= f; ++deg) {
    // all monic polynomials of this degree
    uint64_t count = 1;
    for (size_t i = 0; i < deg; ++i) count *= p;
    std::vector<uint32_t> div(deg + 1, 0);
    div[deg] = 1;
    for (uint64_t n = 0; n < count; ++n) {
      uint64_t t = n;
      for (size_t i = 0; i < deg; ++i) {
        div[i] = static_cast<uint32_t>(t % p);
        t /= p;
      }
      if (prime_poly_divides(div, poly, p)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; uint64_t(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::shared_ptr<const FieldSpec> FieldSpec::make(uint32_t p, uint32_t f) {
  if (!is_prime_u32(p)) throw NotPrimeError("p = " + std::to_string(p) + " is not prime");
  if (f < 1) throw UnsupportedSpecError("degree f must be >= 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < f; ++i) {
    q *= p;
    if (q > kMaxQ) throw UnsupportedSpecError("q = p^f exceeds supported size");
  }

  auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
  spec->p_ = p;
  spec->f_ = f;
  spec->q_ = q;

  if (f == 1) {
    spec->modulus_ = {0, 1};  // x
  } else {
    // smallest monic irreducible, lexicographic on (a_0, ..., a_{f-1})
    uint64_t total = q;  // p^f candidates
    std::vector<uint32_t> cand(f + 1, 0);
    cand[f] = 1;
    bool found = false;
    for (uint64_t n = 0; n < total && !found; ++n) {
      uint64_t t = n;
      // a_0 is the most significant digit of n so n-order = lex order
      for (uint32_t i = 0; i < f; ++i) {
        uint64_t w = 1;
        for (uint32_t k = 0; k < f - 1 - i; ++k) w *= p;
        cand[i] = static_cast<uint32_t>(t / w);
        t %= w;
      }
      if (cand[0] == 0) continue;  // would have root 0
      if (is_irreducible_mod_p(cand, p)) found = true;
    }
    if (!found) throw NoIrreducibleError("no monic irreducible of degree " + std::to_string(f));
    spec->modulus_.assign(cand.begin(), cand.end());
  }

  if (q <= kTableMaxQ && f >= 2) {
    spec->mul_table_.resize(q * q);
    spec->add_table_.resize(q * q);
    for (uint64_t a = 0; a < q; ++a)
      for (uint64_t b = 0; b < q; ++b) {
        spec->mul_table_[a * q + b] = static_cast<uint16_t>(spec->mul_nomod_reduce(a, b));
        // digitwise add
        uint64_t x = a, y = b, w = 1, s = 0;
        for (uint32_t i = 0; i < f; ++i) {
          s += w * ((x % p + y % p) % p);
          x /= p; y /= p; w *= p;
        }
        spec->add_table_[a * q + b] = static_cast<uint16_t>(s);
      }
  }

  spec->inv_table_.assign(q, 0);
  for (uint64_t a = 1; a < q; ++a)
    spec->inv_table_[a] = static_cast<uint16_t>(spec->pow(static_cast<uint32_t>(a), q - 2));

  return spec;
}

std::shared_ptr<const FieldSpec> make_field(uint32_t p, uint32_t f) {
  return FieldSpec::make(p, f);
}

uint32_t FieldSpec::add(uint32_t a, uint32_t b) const {
  if (f_ == 1) return (a + b) % p_;
  if (!add_table_.empty()) return add_table_[uint64_t(a) * q_ + b];
  uint64_t x = a, y = b, w = 1, s = 0;
  for (uint32_t i = 0; i < f_; ++i) {
    s += w * ((x % p_ + y % p_) % p_);
    x /= p_; y /= p_; w *= p_;
  }
  return static_cast<uint32_t>(s);
}

uint32_t FieldSpec::neg(uint32_t a) const {
  if (f_ == 1) return (p_ - a % p_) % p_;
  uint64_t x = a, w = 1, s = 0;
  for (uint32_t i = 0; i < f_; ++i) {
    uint32_t d = static_cast<uint32_t>(x % p_);
    s += w * ((p_ - d) % p_);
    x /= p_; w *= p_;
  }
  return static_cast<uint32_t>(s);
}

uint32_t FieldSpec::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t FieldSpec::mul_nomod_reduce(uint32_t a, uint32_t b) const {
  // schoolbook product of digit vectors, then reduction by the monic modulus
  constexpr uint32_t kMaxF = 16;
  uint32_t da[kMaxF], db[kMaxF];
  uint64_t prod[2 * kMaxF - 1] = {0};
  uint64_t x = a;
  for (uint32_t i = 0; i < f_; ++i) { da[i] = static_cast<uint32_t>(x % p_); x /= p_; }
  x = b;
  for (uint32_t i = 0; i < f_; ++i) { db[i] = static_cast<uint32_t>(x % p_); x /= p_; }
  for (uint32_t i = 0; i < f_; ++i)
    if (da[i])
      for (uint32_t j = 0; j < f_; ++j) prod[i + j] += uint64_t(da[i]) * db[j];
  for (uint32_t i = 0; i < 2 * f_ - 1; ++i) prod[i] %= p_;
  // x^f = -(m_0 + m_1 x + ... + m_{f-1} x^{f-1})
  for (int i = 2 * int(f_) - 2; i >= int(f_); --i) {
    uint64_t c = prod[i];
    if (c) {
      prod[i] = 0;
      for (uint32_t j = 0; j < f_; ++j)
        prod[i - f_ + j] = (prod[i - f_ + j] + c * ((p_ - modulus_[j]) % p_)) % p_;
    }
  }
  uint64_t s = 0, w = 1;
  for (uint32_t i = 0; i < f_; ++i) { s += w * prod[i]; w *= p_; }
  return static_cast<uint32_t>(s);
}

uint32_t FieldSpec::mul(uint32_t a, uint32_t b) const {
  if (f_ == 1) return static_cast<uint32_t>(uint64_t(a) * b % p_);
  if (!mul_table_.empty()) return mul_table_[uint64_t(a) * q_ + b];
  return mul_nomod_reduce(a, b);
}

uint32_t FieldSpec::inv(uint32_t a) const {
  if (a == 0) throw DivisionByZeroError("field inverse of zero");
  if (!inv_table_.empty()) return inv_table_[a];
  return pow(a, q_ - 2);
}

uint32_t FieldSpec::pow(uint32_t a, uint64_t e) const {
  uint32_t acc = 1, base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::vector<uint16_t> FieldSpec::decode(uint32_t code) const {
  std::vector<uint16_t> d(f_);
  uint64_t x = code;
  for (uint32_t i = 0; i < f_; ++i) {
    d[i] = static_cast<uint16_t>(x % p_);
    x /= p_;
  }
  return d;
}

uint32_t FieldSpec::encode(std::span<const uint16_t> digits) const {
  uint64_t s = 0, w = 1;
  for (uint32_t i = 0; i < f_; ++i) {
    s += w * digits[i];
    w *= p_;
  }
  return static_cast<uint32_t>(s);
}

std::string FieldSpec::literal() const {
  if (f_ == 1) return std::to_string(p_);
  return std::to_string(p_) + "^" + std::to_string(f_);
}

// --- FqElement ---

namespace {
void check_same_field(const FqElement& a, const FqElement& b) {
  if (!a.field || !b.field || !a.field->same_field(*b.field))
    throw FieldMismatchError("operands belong to different fields");
}
}  // namespace

FqElement fq_make(std::shared_ptr<const FieldSpec> field,
                  std::vector<uint16_t> digits) {
  if (digits.size() != field->degree())
    throw FieldMismatchError("digit vector length != field degree");
  for (uint16_t d : digits)
    if (d >= field->characteristic())
      throw FieldMismatchError("digit out of range");
  return FqElement{std::move(field), std::move(digits)};
}

FqElement fq_from_code(std::shared_ptr<const FieldSpec> field, uint32_t code) {
  auto digits = field->decode(code);
  return FqElement{std::move(field), std::move(digits)};
}

uint32_t fq_code(const FqElement& a) { return a.field->encode(a.digits); }

FqElement fq_add(const FqElement& a, const FqElement& b) {
  check_same_field(a, b);
  return fq_from_code(a.field, a.field->add(fq_code(a), fq_code(b)));
}

FqElement fq_mul(const FqElement& a, const FqElement& b) {
  check_same_field(a, b);
  return fq_from_code(a.field, a.field->mul(fq_code(a), fq_code(b)));
}

FqElement fq_inv(const FqElement& a) {
  return fq_from_code(a.field, a.field->inv(fq_code(a)));
}

FqElement fq_pow(const FqElement& a, uint64_t e) {
  return fq_from_code(a.field, a.field->pow(fq_code(a), e));
}

// --- ZmodSpec ---

std::shared_ptr<const ZmodSpec> ZmodSpec::make(uint32_t m) {
  if (m < 2) throw UnsupportedSpecError("modulus must be >= 2");
  if (m > kMaxQ) throw UnsupportedSpecError("modulus exceeds supported size");
  auto spec = std::shared_ptr<ZmodSpec>(new ZmodSpec(m));
  uint32_t rest = m;
  for (uint32_t d = 2; uint64_t(d) * d <= rest; ++d) {
    if (rest % d == 0) {
      spec->primes_.push_back(d);
      rest /= d;
      if (rest % d == 0)
        throw UnsupportedSpecError("modulus " + std::to_string(m) + " is not square-free");
    }
  }
  if (rest > 1) spec->primes_.push_back(rest);
  return spec;
}

std::shared_ptr<const ZmodSpec> make_zmod(uint32_t m) { return ZmodSpec::make(m); }

bool ZmodSpec::is_unit(uint32_t a) const {
  return std::gcd(a % m_, m_) == 1;
}

uint32_t ZmodSpec::inv(uint32_t a) const {
  a %= m_;
  int64_t t = 0, new_t = 1;
  int64_t r = m_, new_r = a;
  while (new_r != 0) {
    int64_t qq = r / new_r;
    int64_t tmp_t = t - qq * new_t;
    t = new_t;
    new_t = tmp_t;
    int64_t tmp_r = r - qq * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1)
    throw NotInvertibleError(std::to_string(a) + " is not a unit mod " + std::to_string(m_));
  if (t < 0) t += m_;
  return static_cast<uint32_t>(t);
}

// --- Poly ---

namespace {
void check_same_field(const Poly& a, const Poly& b) {
  if (!a.field || !b.field || !a.field->same_field(*b.field))
    throw FieldMismatchError("polynomials over different fields");
}
void strip(std::vector<uint32_t>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}
}  // namespace

Poly poly_make(std::shared_ptr<const FieldSpec> field,
               std::vector<uint32_t> coeffs) {
  for (uint32_t c : coeffs)
    if (c >= field->order()) throw FieldMismatchError("coefficient code out of range");
  strip(coeffs);
  return Poly{std::move(field), std::move(coeffs)};
}

Poly poly_add(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  const FieldSpec& k = *a.field;
  std::vector<uint32_t> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    uint32_t x = i < a.coeffs.size() ? a.coeffs[i] : 0;
    uint32_t y = i < b.coeffs.size() ? b.coeffs[i] : 0;
    c[i] = k.add(x, y);
  }
  strip(c);
  return Poly{a.field, std::move(c)};
}

Poly poly_sub(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  const FieldSpec& k = *a.field;
  std::vector<uint32_t> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    uint32_t x = i < a.coeffs.size() ? a.coeffs[i] : 0;
    uint32_t y = i < b.coeffs.size() ? b.coeffs[i] : 0;
    c[i] = k.sub(x, y);
  }
  strip(c);
  return Poly{a.field, std::move(c)};
}

Poly poly_mul(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return Poly{a.field, {}};
  const FieldSpec& k = *a.field;
  std::vector<uint32_t> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j)
      c[i + j] = k.add(c[i + j], k.mul(a.coeffs[i], b.coeffs[j]));
  strip(c);
  return Poly{a.field, std::move(c)};
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
  const FieldSpec& k = *a.field;
  std::vector<uint32_t> rem = a.coeffs;
  const size_t db = b.coeffs.size() - 1;
  if (rem.size() <= db)
    return {Poly{a.field, {}}, Poly{a.field, std::move(rem)}};
  std::vector<uint32_t> quot(rem.size() - db, 0);
  const uint32_t lead_inv = k.inv(b.coeffs.back());
  for (size_t i = rem.size(); i-- > db;) {
    uint32_t c = k.mul(rem[i], lead_inv);
    if (c != 0) {
      quot[i - db] = c;
      for (size_t j = 0; j <= db; ++j)
        rem[i - db + j] = k.sub(rem[i - db + j], k.mul(c, b.coeffs[j]));
    }
  }
  strip(quot);
  strip(rem);
  return {Poly{a.field, std::move(quot)}, Poly{a.field, std::move(rem)}};
}

Poly poly_monic(const Poly& a) {
  if (a.is_zero()) return a;
  const FieldSpec& k = *a.field;
  if (a.coeffs.back() == 1) return a;
  uint32_t s = k.inv(a.coeffs.back());
  std::vector<uint32_t> c(a.coeffs.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = k.mul(a.coeffs[i], s);
  return Poly{a.field, std::move(c)};
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = poly_divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return poly_monic(x);
}

Poly poly_derivative(const Poly& a) {
  if (a.coeffs.size() <= 1) return Poly{a.field, {}};
  const FieldSpec& k = *a.field;
  const uint32_t p = k.characteristic();
  std::vector<uint32_t> c(a.coeffs.size() - 1, 0);
  for (size_t i = 1; i < a.coeffs.size(); ++i) {
    uint32_t factor = static_cast<uint32_t>(i % p);  // prime-subfield code
    c[i - 1] = k.mul(a.coeffs[i], factor);
  }
  strip(c);
  return Poly{a.field, std::move(c)};
}

uint32_t poly_eval(const Poly& a, uint32_t x) {
  const FieldSpec& k = *a.field;
  uint32_t acc = 0;
  for (size_t i = a.coeffs.size(); i-- > 0;) acc = k.add(k.mul(acc, x), a.coeffs[i]);
  return acc;
}

bool poly_is_squarefree(const Poly& a) {
  if (a.degree() < 1) return !a.is_zero();
  return poly_gcd(a, poly_derivative(a)).degree() == 0;
}

}  // namespace growthlab
