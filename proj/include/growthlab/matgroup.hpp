#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "growthlab/finfield.hpp"
#include "growthlab/rng.hpp"

namespace growthlab {

enum class Family { SL, GL, PSL };

std::string family_name(Family f);

/// Packed ring code of one matrix entry (field code or Z/m residue).
using Scalar = uint16_t;
/// d x d entries, row-major. For PSL specs a Mat is always the canonical
/// representative of its scalar class. Lexicographic comparison of a Mat
/// coincides with comparison of its canonical bytes.
using Mat = std::vector<Scalar>;

/// Immutable description of SL/GL/PSL over F_q or of SL/GL over Z/mZ.
/// All matrix arithmetic lives here so elements can stay plain code grids.
class GroupSpec {
 public:
  static std::shared_ptr<const GroupSpec> make(
      Family family, uint32_t dim, std::shared_ptr<const FieldSpec> field);
  static std::shared_ptr<const GroupSpec> make(
      Family family, uint32_t dim, std::shared_ptr<const ZmodSpec> zmod);

  Family family() const { return family_; }
  uint32_t dim() const { return dim_; }
  bool is_field_ring() const { return field_ != nullptr; }
  const std::shared_ptr<const FieldSpec>& field() const;
  const std::shared_ptr<const ZmodSpec>& zmod() const;
  uint64_t ring_size() const;

  uint32_t rank() const { return dim_ - 1; }
  /// dim of the ambient group variety, d^2 - 1 for SL/PSL.
  uint32_t dim_ambient() const { return dim_ * dim_ - 1; }
  uint32_t dim_torus() const { return dim_ - 1; }

  /// Canonical identity string, e.g. "SL:2:5", "PSL:2:7", "SL:2:3^2",
  /// "SL:2:Z35" (Z marks a Z/mZ ring).
  const std::string& key() const { return key_; }
  bool equal_specs(const GroupSpec& o) const { return key_ == o.key_; }

  // ring arithmetic on packed codes
  uint32_t radd(uint32_t a, uint32_t b) const;
  uint32_t rsub(uint32_t a, uint32_t b) const;
  uint32_t rneg(uint32_t a) const;
  uint32_t rmul(uint32_t a, uint32_t b) const;
  bool runit(uint32_t a) const;
  uint32_t rinv(uint32_t a) const;

  const Mat& identity() const { return identity_; }
  Mat mat_mul(const Mat& a, const Mat& b) const;
  Mat mat_inv(const Mat& a) const;  // NotInvertibleError
  uint32_t det(const Mat& a) const;
  /// Coefficients of det(xI - A), monic, low-degree-first (d+1 entries).
  /// Division-free (Berkowitz), so it is valid over Z/mZ as well.
  std::vector<uint32_t> char_coeffs(const Mat& a) const;
  /// PSL: lexicographically smallest scalar multiple; identity otherwise.
  Mat canonicalize(Mat a) const;
  /// Enforces entry ranges, the determinant invariant of the family, and
  /// canonical form for PSL. Throws InvariantViolationError.
  void validate(const Mat& a) const;
  /// Scalars lambda with lambda^d = 1 (field rings only; used by PSL).
  const std::vector<uint32_t>& projective_scalars() const { return proj_scalars_; }

 private:
  GroupSpec() = default;
  void finish_init();

  Family family_ = Family::SL;
  uint32_t dim_ = 0;
  std::shared_ptr<const FieldSpec> field_;
  std::shared_ptr<const ZmodSpec> zmod_;
  std::string key_;
  Mat identity_;
  std::vector<uint32_t> proj_scalars_;
};

struct GroupElement {
  std::shared_ptr<const GroupSpec> spec;
  Mat m;
};

/// Canonicalizes and validates a raw code grid.
GroupElement make_element(std::shared_ptr<const GroupSpec> spec, Mat raw);
GroupElement g_identity(std::shared_ptr<const GroupSpec> spec);
GroupElement g_mul(const GroupElement& a, const GroupElement& b);
GroupElement g_inv(const GroupElement& a);
bool g_eq(const GroupElement& a, const GroupElement& b);

/// Characteristic polynomial over the field ring (UnsupportedRingError for
/// Z/mZ specs).
Poly char_poly(const GroupElement& a);

/// |SL(d,q)| = q^{d(d-1)/2} prod_{i=2..d}(q^i - 1),
/// |GL(d,q)| = prod_{i=0..d-1}(q^d - q^i), |PSL| = |SL| / gcd(d, q-1);
/// over Z/mZ (square-free) only SL is supported, as the product of the
/// prime-factor orders.
uint64_t group_order(const GroupSpec& spec);

/// Row-major, big-endian two bytes per entry; byte order equals Mat order.
std::vector<uint8_t> canonical_bytes(const Mat& m);

/// Uniform over the group (field rings): rejection-sample an invertible
/// matrix, rescale the first row for SL, canonicalize for PSL.
GroupElement random_element(const std::shared_ptr<const GroupSpec>& spec, Rng& rng);

/// Generator file grammar: one matrix per line, rows separated by ';',
/// entries by ','. Entries over F_{p^f} with f >= 2 are digit lists joined
/// by '.', low degree first. Blank lines and '#' comments are ignored.
std::vector<GroupElement> parse_generators(
    std::string_view text, const std::shared_ptr<const GroupSpec>& spec);
std::string format_matrix(const GroupSpec& spec, const Mat& m);

/// Same grammar but plain (possibly negative) integers, for matrices over Z
/// awaiting reduction mod m.
std::vector<std::vector<int64_t>> parse_integer_matrices(std::string_view text,
                                                         uint32_t dim);

}  // namespace growthlab
