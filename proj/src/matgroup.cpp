#include "growthlab/matgroup.hpp"

#include <algorithm>
#include <numeric>

namespace growthlab {

std::string family_name(Family f) {
  switch (f) {
    case Family::SL: return "SL";
    case Family::GL: return "GL";
    case Family::PSL: return "PSL";
  }
  return "?";
}

std::shared_ptr<const GroupSpec> GroupSpec::make(
    Family family, uint32_t dim, std::shared_ptr<const FieldSpec> field) {
  if (dim < 2) throw UnsupportedSpecError("dimension must be >= 2");
  auto spec = std::shared_ptr<GroupSpec>(new GroupSpec());
  spec->family_ = family;
  spec->dim_ = dim;
  spec->field_ = std::move(field);
  spec->key_ = family_name(family) + ":" + std::to_string(dim) + ":" +
               spec->field_->literal();
  spec->finish_init();
  return spec;
}

std::shared_ptr<const GroupSpec> GroupSpec::make(
    Family family, uint32_t dim, std::shared_ptr<const ZmodSpec> zmod) {
  if (dim < 2) throw UnsupportedSpecError("dimension must be >= 2");
  if (family == Family::PSL)
    throw UnsupportedSpecError("PSL requires a field ring");
  auto spec = std::shared_ptr<GroupSpec>(new GroupSpec());
  spec->family_ = family;
  spec->dim_ = dim;
  spec->zmod_ = std::move(zmod);
  spec->key_ = family_name(family) + ":" + std::to_string(dim) + ":Z" +
               spec->zmod_->literal();
  spec->finish_init();
  return spec;
}

void GroupSpec::finish_init() {
  identity_.assign(size_t(dim_) * dim_, 0);
  for (uint32_t i = 0; i < dim_; ++i) identity_[size_t(i) * dim_ + i] = 1;
  if (family_ == Family::PSL) {
    for (uint64_t l = 1; l < field_->order(); ++l)
      if (field_->pow(static_cast<uint32_t>(l), dim_) == 1)
        proj_scalars_.push_back(static_cast<uint32_t>(l));
  } else {
    proj_scalars_.push_back(1);
  }
}

const std::shared_ptr<const FieldSpec>& GroupSpec::field() const {
  if (!field_) throw UnsupportedRingError("spec " + key_ + " has no field ring");
  return field_;
}

const std::shared_ptr<const ZmodSpec>& GroupSpec::zmod() const {
  if (!zmod_) throw UnsupportedRingError("spec " + key_ + " has no Z/mZ ring");
  return zmod_;
}

uint64_t GroupSpec::ring_size() const {
  return field_ ? field_->order() : zmod_->modulus();
}

uint32_t GroupSpec::radd(uint32_t a, uint32_t b) const {
  return field_ ? field_->add(a, b) : zmod_->add(a, b);
}
uint32_t GroupSpec::rsub(uint32_t a, uint32_t b) const {
  return field_ ? field_->sub(a, b) : zmod_->sub(a, b);
}
uint32_t GroupSpec::rneg(uint32_t a) const {
  return field_ ? field_->neg(a) : zmod_->neg(a);
}
uint32_t GroupSpec::rmul(uint32_t a, uint32_t b) const {
  return field_ ? field_->mul(a, b) : zmod_->mul(a, b);
}
bool GroupSpec::runit(uint32_t a) const {
  return field_ ? a != 0 : zmod_->is_unit(a);
}
uint32_t GroupSpec::rinv(uint32_t a) const {
  if (field_) {
    if (a == 0) throw NotInvertibleError("zero is not invertible");
    return field_->inv(a);
  }
  return zmod_->inv(a);
}

Mat GroupSpec::mat_mul(const Mat& a, const Mat& b) const {
  const uint32_t d = dim_;
  Mat c(size_t(d) * d);
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j) {
      uint32_t acc = 0;
      for (uint32_t k = 0; k < d; ++k)
        acc = radd(acc, rmul(a[size_t(i) * d + k], b[size_t(k) * d + j]));
      c[size_t(i) * d + j] = static_cast<Scalar>(acc);
    }
  if (family_ == Family::PSL) return canonicalize(std::move(c));
  return c;
}

std::vector<uint32_t> GroupSpec::char_coeffs(const Mat& a) const {
  // Berkowitz: iterate over leading principal minors, expanding the current
  // coefficient vector through a lower-triangular Toeplitz product. V is
  // kept high-degree-first with V[0] = 1.
  const uint32_t d = dim_;
  std::vector<uint32_t> v{1, rneg(a[0])};
  std::vector<uint32_t> s, w, wn, vn;
  for (uint32_t r = 2; r <= d; ++r) {
    // s[0] = corner, s[k] = R * B^{k-1} * C for the leading r x r minor
    s.assign(r, 0);
    s[0] = a[size_t(r - 1) * d + (r - 1)];
    w.assign(r - 1, 0);
    for (uint32_t i = 0; i < r - 1; ++i) w[i] = a[size_t(i) * d + (r - 1)];
    for (uint32_t k = 1; k < r; ++k) {
      uint32_t dot = 0;
      for (uint32_t i = 0; i < r - 1; ++i)
        dot = radd(dot, rmul(a[size_t(r - 1) * d + i], w[i]));
      s[k] = dot;
      if (k + 1 < r) {
        wn.assign(r - 1, 0);
        for (uint32_t i = 0; i < r - 1; ++i) {
          uint32_t acc = 0;
          for (uint32_t j = 0; j < r - 1; ++j)
            acc = radd(acc, rmul(a[size_t(i) * d + j], w[j]));
          wn[i] = acc;
        }
        w.swap(wn);
      }
    }
    vn.assign(r + 1, 0);
    for (uint32_t i = 0; i <= r; ++i) {
      uint32_t acc = i < v.size() ? v[i] : 0;
      for (uint32_t j = 0; j < i && j < v.size(); ++j)
        acc = rsub(acc, rmul(s[i - j - 1], v[j]));
      vn[i] = acc;
    }
    v.swap(vn);
  }
  std::reverse(v.begin(), v.end());  // low-degree-first
  return v;
}

uint32_t GroupSpec::det(const Mat& a) const {
  if (dim_ == 2) {
    return rsub(rmul(a[0], a[3]), rmul(a[1], a[2]));
  }
  auto c = char_coeffs(a);
  // det(xI - A) at x = 0 is (-1)^d det(A)
  return (dim_ % 2 == 0) ? c[0] : rneg(c[0]);
}

Mat GroupSpec::mat_inv(const Mat& a) const {
  const uint32_t d = dim_;
  auto c = char_coeffs(a);
  if (!runit(rneg(c[0])))
    throw NotInvertibleError("matrix determinant is not a unit");
  // Cayley-Hamilton: A^{-1} = -(1/c0) (A^{d-1} + c_{d-1} A^{d-2} + ... + c_1 I),
  // accumulated by Horner: M = I; for k = d-1..1: M = M*A + c_k*I.
  Mat m = identity_;
  for (uint32_t k = d - 1; k >= 1; --k) {
    Mat prod(size_t(d) * d);
    for (uint32_t i = 0; i < d; ++i)
      for (uint32_t j = 0; j < d; ++j) {
        uint32_t acc = 0;
        for (uint32_t t = 0; t < d; ++t)
          acc = radd(acc, rmul(m[size_t(i) * d + t], a[size_t(t) * d + j]));
        prod[size_t(i) * d + j] = static_cast<Scalar>(acc);
      }
    m = std::move(prod);
    for (uint32_t i = 0; i < d; ++i) {
      size_t idx = size_t(i) * d + i;
      m[idx] = static_cast<Scalar>(radd(m[idx], c[k]));
    }
    if (k == 1) break;
  }
  uint32_t scale = rinv(rneg(c[0]));
  for (auto& e : m) e = static_cast<Scalar>(rmul(e, scale));
  if (family_ == Family::PSL) return canonicalize(std::move(m));
  return m;
}

Mat GroupSpec::canonicalize(Mat a) const {
  if (family_ != Family::PSL || proj_scalars_.size() == 1) return a;
  Mat best = a;
  Mat cand(a.size());
  for (size_t s = 1; s < proj_scalars_.size(); ++s) {
    uint32_t l = proj_scalars_[s];
    for (size_t i = 0; i < a.size(); ++i)
      cand[i] = static_cast<Scalar>(rmul(l, a[i]));
    if (cand < best) best = cand;
  }
  return best;
}

void GroupSpec::validate(const Mat& a) const {
  if (a.size() != size_t(dim_) * dim_)
    throw InvariantViolationError("matrix has wrong shape for " + key_);
  const uint64_t rs = ring_size();
  for (Scalar e : a)
    if (e >= rs) throw InvariantViolationError("entry code out of ring range");
  const uint32_t dt = det(a);
  switch (family_) {
    case Family::SL:
      if (dt != 1)
        throw InvariantViolationError("determinant is " + std::to_string(dt) +
                                      ", expected 1 for " + key_);
      break;
    case Family::GL:
      if (!runit(dt))
        throw InvariantViolationError("determinant is not a unit for " + key_);
      break;
    case Family::PSL: {
      if (dt != 1)
        throw InvariantViolationError("determinant is " + std::to_string(dt) +
                                      ", expected 1 for " + key_);
      Mat copy = a;
      if (canonicalize(std::move(copy)) != a)
        throw InvariantViolationError("matrix is not the canonical class representative");
      break;
    }
  }
}

// --- elements ---

namespace {
void check_same_spec(const GroupElement& a, const GroupElement& b) {
  if (!a.spec || !b.spec || !a.spec->equal_specs(*b.spec))
    throw SpecMismatchError("elements belong to different group specs");
}
}  // namespace

GroupElement make_element(std::shared_ptr<const GroupSpec> spec, Mat raw) {
  Mat m = spec->canonicalize(std::move(raw));
  spec->validate(m);
  return GroupElement{std::move(spec), std::move(m)};
}

GroupElement g_identity(std::shared_ptr<const GroupSpec> spec) {
  Mat m = spec->identity();
  return GroupElement{std::move(spec), std::move(m)};
}

GroupElement g_mul(const GroupElement& a, const GroupElement& b) {
  check_same_spec(a, b);
  return GroupElement{a.spec, a.spec->mat_mul(a.m, b.m)};
}

GroupElement g_inv(const GroupElement& a) {
  return GroupElement{a.spec, a.spec->mat_inv(a.m)};
}

bool g_eq(const GroupElement& a, const GroupElement& b) {
  check_same_spec(a, b);
  return a.m == b.m;
}

Poly char_poly(const GroupElement& a) {
  const auto& field = a.spec->field();  // throws UnsupportedRingError for Z/mZ
  auto c = a.spec->char_coeffs(a.m);
  return poly_make(field, std::move(c));
}

// --- order formulas ---

namespace {
using u128 = unsigned __int128;

uint64_t checked_u64(u128 v, const std::string& what) {
  if (v > u128(UINT64_MAX)) throw UnsupportedSpecError(what + " overflows 64 bits");
  return static_cast<uint64_t>(v);
}

u128 sl_order_u128(uint32_t d, uint64_t q) {
  u128 acc = 1;
  for (uint64_t i = 0; i < uint64_t(d) * (d - 1) / 2; ++i) acc *= q;
  u128 qi = q;
  for (uint32_t i = 2; i <= d; ++i) {
    qi *= q;
    acc *= (qi - 1);
    if (acc > (u128(1) << 100)) throw UnsupportedSpecError("group order overflows");
  }
  return acc;
}

u128 gl_order_u128(uint32_t d, uint64_t q) {
  u128 qd = 1;
  for (uint32_t i = 0; i < d; ++i) qd *= q;
  u128 acc = 1, qi = 1;
  for (uint32_t i = 0; i < d; ++i) {
    acc *= (qd - qi);
    qi *= q;
    if (acc > (u128(1) << 100)) throw UnsupportedSpecError("group order overflows");
  }
  return acc;
}
}  // namespace

uint64_t group_order(const GroupSpec& spec) {
  const uint32_t d = spec.dim();
  if (spec.is_field_ring()) {
    const uint64_t q = spec.field()->order();
    switch (spec.family()) {
      case Family::SL:
        return checked_u64(sl_order_u128(d, q), "|SL|");
      case Family::GL:
        return checked_u64(gl_order_u128(d, q), "|GL|");
      case Family::PSL: {
        u128 sl = sl_order_u128(d, q);
        uint64_t g = std::gcd(uint64_t(d), q - 1);
        return checked_u64(sl / g, "|PSL|");
      }
    }
    throw UnsupportedSpecError("unknown family");
  }
  if (spec.family() != Family::SL)
    throw UnsupportedSpecError("order over Z/mZ is only defined for SL here");
  u128 acc = 1;
  for (uint32_t p : spec.zmod()->prime_factors()) {
    acc *= sl_order_u128(d, p);
    if (acc > (u128(1) << 100)) throw UnsupportedSpecError("group order overflows");
  }
  return checked_u64(acc, "|SL(d,Z/m)|");
}

std::vector<uint8_t> canonical_bytes(const Mat& m) {
  std::vector<uint8_t> out;
  out.reserve(m.size() * 2);
  for (Scalar e : m) {
    out.push_back(static_cast<uint8_t>(e >> 8));
    out.push_back(static_cast<uint8_t>(e & 0xFF));
  }
  return out;
}

GroupElement random_element(const std::shared_ptr<const GroupSpec>& spec, Rng& rng) {
  if (!spec->is_field_ring())
    throw UnsupportedRingError("random_element needs a field ring");
  const uint32_t d = spec->dim();
  const uint64_t q = spec->field()->order();
  Mat m(size_t(d) * d);
  for (;;) {
    for (auto& e : m) e = static_cast<Scalar>(rng.below(q));
    uint32_t dt = spec->det(m);
    if (dt == 0) continue;
    if (spec->family() == Family::GL) return GroupElement{spec, m};
    // scale the first row by det^{-1}: a bijection from each det-fiber of
    // GL onto SL, so uniform GL draws stay uniform on SL
    uint32_t s = spec->field()->inv(dt);
    for (uint32_t j = 0; j < d; ++j)
      m[j] = static_cast<Scalar>(spec->rmul(s, m[j]));
    Mat c = spec->canonicalize(std::move(m));
    return GroupElement{spec, std::move(c)};
  }
}

// --- parsing / formatting ---

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  int line = 1;
  int col = 1;
};

// one physical line with comments stripped; returns false at end of input
bool next_line(Cursor& c, std::string_view& out, int& line_no) {
  while (c.pos < c.text.size()) {
    size_t start = c.pos;
    size_t eol = c.text.find('\n', start);
    if (eol == std::string_view::npos) eol = c.text.size();
    std::string_view raw = c.text.substr(start, eol - start);
    c.pos = eol + (eol < c.text.size() ? 1 : 0);
    int this_line = c.line;
    ++c.line;
    size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    size_t a = raw.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) continue;
    size_t b = raw.find_last_not_of(" \t\r");
    out = raw.substr(0, b + 1);  // keep leading blanks so columns stay true
    line_no = this_line;
    return true;
  }
  return false;
}

std::vector<std::string_view> split_keep(std::string_view s, char sep,
                                         std::vector<size_t>* offsets) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  for (;;) {
    size_t e = s.find(sep, start);
    if (offsets) offsets->push_back(start);
    if (e == std::string_view::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, e - start));
    start = e + 1;
  }
  return parts;
}

int64_t parse_int(std::string_view tok, int line, int col) {
  size_t a = tok.find_first_not_of(" \t");
  if (a == std::string_view::npos) throw ParseError("empty entry", line, col);
  size_t b = tok.find_last_not_of(" \t");
  tok = tok.substr(a, b - a + 1);
  bool negative = false;
  size_t i = 0;
  if (tok[0] == '-' || tok[0] == '+') {
    negative = tok[0] == '-';
    i = 1;
  }
  if (i >= tok.size()) throw ParseError("malformed integer", line, col);
  int64_t v = 0;
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9')
      throw ParseError("malformed integer '" + std::string(tok) + "'", line,
                       col + static_cast<int>(i));
    v = v * 10 + (tok[i] - '0');
    if (v > (int64_t(1) << 60)) throw ParseError("integer too large", line, col);
  }
  return negative ? -v : v;
}

}  // namespace

std::vector<GroupElement> parse_generators(
    std::string_view text, const std::shared_ptr<const GroupSpec>& spec) {
  const uint32_t d = spec->dim();
  const bool ext_field = spec->is_field_ring() && spec->field()->degree() >= 2;
  std::vector<GroupElement> out;
  Cursor cur{text};
  std::string_view line;
  int line_no = 0;
  while (next_line(cur, line, line_no)) {
    std::vector<size_t> row_offs;
    auto rows = split_keep(line, ';', &row_offs);
    if (rows.size() != d)
      throw ParseError("expected " + std::to_string(d) + " rows, got " +
                           std::to_string(rows.size()),
                       line_no, 1);
    Mat m(size_t(d) * d);
    for (uint32_t i = 0; i < d; ++i) {
      std::vector<size_t> ent_offs;
      auto entries = split_keep(rows[i], ',', &ent_offs);
      if (entries.size() != d)
        throw ParseError("expected " + std::to_string(d) + " entries in row " +
                             std::to_string(i + 1) + ", got " +
                             std::to_string(entries.size()),
                         line_no, static_cast<int>(row_offs[i]) + 1);
      for (uint32_t j = 0; j < d; ++j) {
        int col = static_cast<int>(row_offs[i] + ent_offs[j]) + 1;
        uint32_t code;
        if (ext_field) {
          const auto& fs = *spec->field();
          std::vector<size_t> dig_offs;
          auto digs = split_keep(entries[j], '.', &dig_offs);
          if (digs.size() > fs.degree())
            throw ParseError("too many digits for degree " +
                                 std::to_string(fs.degree()),
                             line_no, col);
          std::vector<uint16_t> digits(fs.degree(), 0);
          for (size_t t = 0; t < digs.size(); ++t) {
            int64_t v = parse_int(digs[t], line_no,
                                  col + static_cast<int>(dig_offs[t]));
            if (v < 0 || v >= fs.characteristic())
              throw ParseError("digit out of range [0," +
                                   std::to_string(fs.characteristic()) + ")",
                               line_no, col + static_cast<int>(dig_offs[t]));
            digits[t] = static_cast<uint16_t>(v);
          }
          code = fs.encode(digits);
        } else {
          int64_t v = parse_int(entries[j], line_no, col);
          if (v < 0 || uint64_t(v) >= spec->ring_size())
            throw ParseError("entry out of range [0," +
                                 std::to_string(spec->ring_size()) + ")",
                             line_no, col);
          code = static_cast<uint32_t>(v);
        }
        m[size_t(i) * d + j] = static_cast<Scalar>(code);
      }
    }
    out.push_back(make_element(spec, std::move(m)));
  }
  return out;
}

std::string format_matrix(const GroupSpec& spec, const Mat& m) {
  const uint32_t d = spec.dim();
  const bool ext_field = spec.is_field_ring() && spec.field()->degree() >= 2;
  std::string s;
  for (uint32_t i = 0; i < d; ++i) {
    if (i) s += ';';
    for (uint32_t j = 0; j < d; ++j) {
      if (j) s += ',';
      uint32_t code = m[size_t(i) * d + j];
      if (ext_field) {
        auto digits = spec.field()->decode(code);
        for (size_t t = 0; t < digits.size(); ++t) {
          if (t) s += '.';
          s += std::to_string(digits[t]);
        }
      } else {
        s += std::to_string(code);
      }
    }
  }
  return s;
}

std::vector<std::vector<int64_t>> parse_integer_matrices(std::string_view text,
                                                         uint32_t dim) {
  std::vector<std::vector<int64_t>> out;
  Cursor cur{text};
  std::string_view line;
  int line_no = 0;
  while (next_line(cur, line, line_no)) {
    std::vector<size_t> row_offs;
    auto rows = split_keep(line, ';', &row_offs);
    if (rows.size() != dim)
      throw ParseError("expected " + std::to_string(dim) + " rows, got " +
                           std::to_string(rows.size()),
                       line_no, 1);
    std::vector<int64_t> m(size_t(dim) * dim);
    for (uint32_t i = 0; i < dim; ++i) {
      std::vector<size_t> ent_offs;
      auto entries = split_keep(rows[i], ',', &ent_offs);
      if (entries.size() != dim)
        throw ParseError("expected " + std::to_string(dim) + " entries in row " +
                             std::to_string(i + 1),
                         line_no, static_cast<int>(row_offs[i]) + 1);
      for (uint32_t j = 0; j < dim; ++j)
        m[size_t(i) * dim + j] = parse_int(
            entries[j], line_no, static_cast<int>(row_offs[i] + ent_offs[j]) + 1);
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace growthlab
