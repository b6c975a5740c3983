#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "growthlab/errors.hpp"

namespace growthlab {

/// F_q = F_{p^f} with a fixed monic irreducible modulus polynomial.
///
/// Elements are passed around as packed codes in [0, q): the element with
/// digit expansion (a_0, ..., a_{f-1}) in base p has code sum a_i * p^i.
/// Code 0 is zero, code 1 is one, and for f >= 2 code p is the residue
/// class of x. Codes 0..p-1 form the prime subfield.
class FieldSpec {
 public:
  /// Builds F_{p^f}. The modulus is the lexicographically smallest monic
  /// irreducible of degree f over F_p, coefficients compared from the
  /// constant term upward, so the model is deterministic across runs.
  /// For f = 1 the modulus is x and arithmetic is plain mod p.
  static std::shared_ptr<const FieldSpec> make(uint32_t p, uint32_t f);

  uint32_t characteristic() const { return p_; }
  uint32_t degree() const { return f_; }
  uint64_t order() const { return q_; }
  /// Monic modulus, low-degree-first, f+1 coefficients.
  const std::vector<uint16_t>& modulus() const { return modulus_; }

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t sub(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;  // DivisionByZeroError on 0
  uint32_t pow(uint32_t a, uint64_t e) const;

  std::vector<uint16_t> decode(uint32_t code) const;
  uint32_t encode(std::span<const uint16_t> digits) const;

  bool same_field(const FieldSpec& o) const {
    return p_ == o.p_ && f_ == o.f_ && modulus_ == o.modulus_;
  }

  /// "p" for prime fields, "p^f" otherwise.
  std::string literal() const;

 private:
  FieldSpec() = default;
  uint32_t mul_nomod_reduce(uint32_t a, uint32_t b) const;

  uint32_t p_ = 0;
  uint32_t f_ = 0;
  uint64_t q_ = 0;
  std::vector<uint16_t> modulus_;
  std::vector<uint16_t> inv_table_;  // size q; entry 0 unused
  std::vector<uint16_t> mul_table_;  // q*q when q is small enough, else empty
  std::vector<uint16_t> add_table_;
};

std::shared_ptr<const FieldSpec> make_field(uint32_t p, uint32_t f);

/// A field element in digit form, owning its field identity. The packed
/// code form (FieldSpec arithmetic) is the workhorse; this type is the
/// boundary representation used by parsers and reports.
struct FqElement {
  std::shared_ptr<const FieldSpec> field;
  std::vector<uint16_t> digits;  // size f, each in [0, p)
};

FqElement fq_make(std::shared_ptr<const FieldSpec> field,
                  std::vector<uint16_t> digits);
FqElement fq_from_code(std::shared_ptr<const FieldSpec> field, uint32_t code);
uint32_t fq_code(const FqElement& a);
FqElement fq_add(const FqElement& a, const FqElement& b);
FqElement fq_mul(const FqElement& a, const FqElement& b);
FqElement fq_inv(const FqElement& a);
FqElement fq_pow(const FqElement& a, uint64_t e);

/// Z/mZ for square-free m. Elements are plain residues in [0, m); units are
/// exactly the residues coprime to m.
class ZmodSpec {
 public:
  static std::shared_ptr<const ZmodSpec> make(uint32_t m);

  uint32_t modulus() const { return m_; }
  const std::vector<uint32_t>& prime_factors() const { return primes_; }

  uint32_t add(uint32_t a, uint32_t b) const { return (a + b) % m_; }
  uint32_t sub(uint32_t a, uint32_t b) const { return (a + m_ - b % m_) % m_; }
  uint32_t neg(uint32_t a) const { return (m_ - a % m_) % m_; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % m_);
  }
  bool is_unit(uint32_t a) const;
  uint32_t inv(uint32_t a) const;  // NotInvertibleError unless gcd(a, m) = 1

  std::string literal() const { return std::to_string(m_); }

 private:
  explicit ZmodSpec(uint32_t m) : m_(m) {}
  uint32_t m_;
  std::vector<uint32_t> primes_;
};

std::shared_ptr<const ZmodSpec> make_zmod(uint32_t m);

/// Univariate polynomial over a FieldSpec, coefficients as packed codes,
/// low-degree-first, trailing zeros stripped. Empty vector = zero polynomial
/// (degree -1 by convention).
struct Poly {
  std::shared_ptr<const FieldSpec> field;
  std::vector<uint32_t> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
};

Poly poly_make(std::shared_ptr<const FieldSpec> field,
               std::vector<uint32_t> coeffs);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
/// (quotient, remainder); b must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_monic(const Poly& a);
/// Monic gcd; gcd(a, 0) = monic(a), gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);
/// Formal derivative (exponent factors reduced mod p).
Poly poly_derivative(const Poly& a);
uint32_t poly_eval(const Poly& a, uint32_t x);
/// For deg >= 1: true iff gcd(f, f') is constant. In characteristic p a
/// vanishing derivative forces a p-th power factor, so this detects exactly
/// the squarefree polynomials.
bool poly_is_squarefree(const Poly& a);

bool is_prime_u32(uint32_t n);

}  // namespace growthlab
