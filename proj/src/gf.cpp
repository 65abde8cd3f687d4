// SPDX-License-Identifier: Apache-2.0
#include "bilmult/gf.hpp"

#include <algorithm>

#include "bilmult/error.hpp"

namespace bilmult {

namespace {

using CSpan = std::span<const Residue>;
using MSpan = std::span<Residue>;

bool all_zero(CSpan x) {
  return std::all_of(x.begin(), x.end(), [](Residue r) { return r == 0; });
}

class Arith {
 public:
  explicit Arith(const FieldDescriptor& F) : F_(F), p_(F.characteristic()) {}

  void add_into(MSpan acc, CSpan y) const {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = static_cast<Residue>((std::uint64_t{acc[i]} + y[i]) % p_);
  }

  void sub_into(MSpan acc, CSpan y) const {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = static_cast<Residue>((std::uint64_t{acc[i]} + p_ - y[i]) % p_);
  }

  // out must not alias x or y.
  void mul(std::size_t level, CSpan x, CSpan y, MSpan out) const {
    if (level == 0) {
      out[0] = static_cast<Residue>(std::uint64_t{x[0]} * y[0] % p_);
      return;
    }
    const ExtensionStep& step = F_.chain()[level - 1];
    const std::size_t d = step.degree;
    const std::size_t sub = F_.dimension_at(level - 1);
    std::vector<Residue> acc((2 * d - 1) * sub, 0);
    std::vector<Residue> t(sub);
    for (std::size_t i = 0; i < d; ++i) {
      CSpan xi = x.subspan(i * sub, sub);
      if (all_zero(xi)) continue;
      for (std::size_t j = 0; j < d; ++j) {
        CSpan yj = y.subspan(j * sub, sub);
        if (all_zero(yj)) continue;
        mul(level - 1, xi, yj, t);
        add_into(MSpan(acc).subspan((i + j) * sub, sub), t);
      }
    }
    // x^d = -(c_0 + ... + c_{d-1} x^{d-1})
    for (std::size_t k = 2 * d - 2; k >= d; --k) {
      CSpan ck(acc.data() + k * sub, sub);
      if (!all_zero(ck)) {
        for (std::size_t s = 0; s < d; ++s) {
          const Element& m = step.modulus[s];
          if (all_zero(m)) continue;
          mul(level - 1, ck, m, t);
          sub_into(MSpan(acc).subspan((k - d + s) * sub, sub), t);
        }
      }
      if (k == d) break;
    }
    std::copy(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(d * sub), out.begin());
  }

 private:
  const FieldDescriptor& F_;
  std::uint64_t p_;
};

void require_element(const FieldDescriptor& F, const Element& x) {
  if (x.size() != F.dimension()) throw Error(ErrorCode::DimensionMismatch, "element has wrong length");
}

}  // namespace

FieldDescriptor FieldDescriptor::prime(std::uint64_t p) {
  if (p > kMaxPrime) throw Error(ErrorCode::TooLarge, "prime exceeds 2^31");
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  FieldDescriptor F;
  F.p_ = p;
  return F;
}

FieldDescriptor FieldDescriptor::extended_unchecked(const Poly& low) const {
  if (low.empty()) throw Error(ErrorCode::ValidationError, "extension degree must be positive");
  for (const Element& c : low) {
    if (!gf_valid(*this, c)) throw Error(ErrorCode::ValidationError, "modulus coefficient is not a field element");
  }
  if (dimension() * low.size() > kMaxDimension) throw Error(ErrorCode::TooLarge, "field dimension over F_p exceeds 4096");
  FieldDescriptor F = *this;
  F.chain_.push_back(ExtensionStep{low.size(), low});
  F.dims_.push_back(dimension() * low.size());
  return F;
}

FieldDescriptor FieldDescriptor::extended_by(const Poly& low) const {
  FieldDescriptor F = extended_unchecked(low);
  Poly full = low;
  full.push_back(gf_one(*this));
  if (!poly_irreducible(*this, full)) throw Error(ErrorCode::ValidationError, "modulus is reducible");
  return F;
}

FieldDescriptor FieldDescriptor::truncated(std::size_t n) const {
  if (n > levels()) throw Error(ErrorCode::OutOfRange, "truncation beyond chain length");
  FieldDescriptor F;
  F.p_ = p_;
  F.chain_.assign(chain_.begin(), chain_.begin() + static_cast<std::ptrdiff_t>(n));
  F.dims_.assign(dims_.begin(), dims_.begin() + static_cast<std::ptrdiff_t>(n + 1));
  return F;
}

bool FieldDescriptor::extends(const FieldDescriptor& base) const {
  return base.levels() <= levels() && truncated(base.levels()) == base;
}

std::size_t FieldDescriptor::degree_over(const FieldDescriptor& base) const {
  if (!extends(base)) throw Error(ErrorCode::FieldMismatch, "field does not extend the given base");
  return dimension() / base.dimension();
}

BigInt FieldDescriptor::cardinality() const { return big_pow(BigInt(p_), dimension()); }

std::optional<std::uint64_t> FieldDescriptor::small_cardinality() const {
  const BigInt c = cardinality();
  if (c > (BigInt(1) << 62)) return std::nullopt;
  return static_cast<std::uint64_t>(c);
}

FieldDescriptor field_make_prime(std::uint64_t p) { return FieldDescriptor::prime(p); }

FieldDescriptor field_extend(const FieldDescriptor& base, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "extension degree must be positive");
  if (n == 1) return base;
  if (base.dimension() * n > kMaxDimension) throw Error(ErrorCode::TooLarge, "field dimension over F_p exceeds 4096");
  const auto q = base.small_cardinality();
  if (!q) throw Error(ErrorCode::TooLarge, "base field too large to enumerate coefficients");
  // Odometer over coefficient indices, c_0 least significant. c_0 = 0 is skipped (x divides f).
  std::vector<std::uint64_t> digits(n, 0);
  digits[0] = 1;
  Poly full(n + 1);
  full[n] = gf_one(base);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) full[i] = element_from_index(base, digits[i]);
    if (poly_irreducible(base, full)) {
      return base.extended_unchecked(Poly(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(n)));
    }
    std::size_t i = 0;
    while (i < n && ++digits[i] == *q) digits[i++] = 0;
    if (i == n) throw Error(ErrorCode::NoRootFound, "no irreducible polynomial found");
    if (digits[0] == 0) digits[0] = 1;
  }
}

bool gf_valid(const FieldDescriptor& F, const Element& x) {
  if (x.size() != F.dimension()) return false;
  return std::all_of(x.begin(), x.end(), [&](Residue r) { return r < F.characteristic(); });
}

Element gf_zero(const FieldDescriptor& F) { return Element(F.dimension(), 0); }

Element gf_one(const FieldDescriptor& F) {
  Element e(F.dimension(), 0);
  e[0] = 1;
  return e;
}

bool gf_is_zero(const Element& x) { return all_zero(x); }

Element gf_add(const FieldDescriptor& F, const Element& x, const Element& y) {
  require_element(F, x);
  require_element(F, y);
  Element r = x;
  Arith(F).add_into(r, y);
  return r;
}

Element gf_sub(const FieldDescriptor& F, const Element& x, const Element& y) {
  require_element(F, x);
  require_element(F, y);
  Element r = x;
  Arith(F).sub_into(r, y);
  return r;
}

Element gf_neg(const FieldDescriptor& F, const Element& x) { return gf_sub(F, gf_zero(F), x); }

Element gf_mul(const FieldDescriptor& F, const Element& x, const Element& y) {
  require_element(F, x);
  require_element(F, y);
  Element r(F.dimension());
  Arith(F).mul(F.levels(), x, y, r);
  return r;
}

Element gf_pow(const FieldDescriptor& F, const Element& x, const BigInt& e) {
  if (e < 0) return gf_pow(F, gf_inv(F, x), -e);
  Element result = gf_one(F);
  if (e == 0) return result;
  const std::size_t top = boost::multiprecision::msb(e);
  for (std::size_t i = top + 1; i-- > 0;) {
    result = gf_mul(F, result, result);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) result = gf_mul(F, result, x);
  }
  return result;
}

Element gf_inv(const FieldDescriptor& F, const Element& x) {
  require_element(F, x);
  if (gf_is_zero(x)) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return gf_pow(F, x, F.cardinality() - 2);
}

Element gf_from_int(const FieldDescriptor& F, std::uint64_t v) {
  Element e = gf_zero(F);
  e[0] = static_cast<Residue>(v % F.characteristic());
  return e;
}

std::uint64_t element_index(const FieldDescriptor& F, const Element& x) {
  require_element(F, x);
  if (!F.small_cardinality()) throw Error(ErrorCode::TooLarge, "field too large for element indices");
  std::uint64_t idx = 0;
  for (std::size_t i = x.size(); i-- > 0;) idx = idx * F.characteristic() + x[i];
  return idx;
}

Element element_from_index(const FieldDescriptor& F, std::uint64_t index) {
  const auto q = F.small_cardinality();
  if (!q) throw Error(ErrorCode::TooLarge, "field too large for element indices");
  if (index >= *q) throw Error(ErrorCode::OutOfRange, "element index out of range");
  Element x(F.dimension());
  for (Residue& c : x) {
    c = static_cast<Residue>(index % F.characteristic());
    index /= F.characteristic();
  }
  return x;
}

Element embed(const FieldDescriptor& ext, const FieldDescriptor& base, const Element& x) {
  if (!ext.extends(base)) throw Error(ErrorCode::FieldMismatch, "embedding target does not extend the source");
  require_element(base, x);
  Element r = gf_zero(ext);
  std::copy(x.begin(), x.end(), r.begin());
  return r;
}

std::vector<Element> coordinates_over(const FieldDescriptor& ext, const FieldDescriptor& base, const Element& x) {
  const std::size_t n = ext.degree_over(base);
  require_element(ext, x);
  const std::size_t b = base.dimension();
  std::vector<Element> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(x.begin() + static_cast<std::ptrdiff_t>(i * b), x.begin() + static_cast<std::ptrdiff_t>((i + 1) * b));
  return out;
}

Element from_coordinates(const FieldDescriptor& ext, const FieldDescriptor& base, const std::vector<Element>& coords) {
  const std::size_t n = ext.degree_over(base);
  if (coords.size() != n) throw Error(ErrorCode::DimensionMismatch, "wrong number of coordinates");
  Element x;
  x.reserve(ext.dimension());
  for (const Element& c : coords) {
    require_element(base, c);
    x.insert(x.end(), c.begin(), c.end());
  }
  return x;
}

Element generator(const FieldDescriptor& F) {
  if (F.levels() == 0) return gf_one(F);
  const FieldDescriptor below = F.below();
  const ExtensionStep& step = F.chain().back();
  if (step.degree == 1) return embed(F, below, gf_neg(below, step.modulus[0]));
  Element g = gf_zero(F);
  g[below.dimension()] = 1;
  return g;
}

// Polynomials ----------------------------------------------------------------

void poly_trim(Poly& f) {
  while (!f.empty() && gf_is_zero(f.back())) f.pop_back();
}

std::size_t poly_degree(const Poly& f) {
  Poly g = f;
  poly_trim(g);
  return g.empty() ? 0 : g.size() - 1;
}

Poly poly_sub(const FieldDescriptor& F, const Poly& f, const Poly& g) {
  Poly r(std::max(f.size(), g.size()), gf_zero(F));
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = gf_sub(F, r[i], g[i]);
  poly_trim(r);
  return r;
}

Poly poly_mul(const FieldDescriptor& F, const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) return {};
  Poly r(f.size() + g.size() - 1, gf_zero(F));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (gf_is_zero(f[i])) continue;
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = gf_add(F, r[i + j], gf_mul(F, f[i], g[j]));
  }
  poly_trim(r);
  return r;
}

Poly poly_mod(const FieldDescriptor& F, const Poly& f, const Poly& g_in) {
  Poly g = g_in;
  poly_trim(g);
  if (g.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  Poly r = f;
  poly_trim(r);
  const std::size_t dg = g.size() - 1;
  const Element lead_inv = gf_inv(F, g.back());
  while (!r.empty() && r.size() - 1 >= dg) {
    const std::size_t shift = r.size() - 1 - dg;
    const Element factor = gf_mul(F, r.back(), lead_inv);
    for (std::size_t i = 0; i <= dg; ++i) r[shift + i] = gf_sub(F, r[shift + i], gf_mul(F, factor, g[i]));
    poly_trim(r);
  }
  return r;
}

Poly poly_gcd(const FieldDescriptor& F, Poly f, Poly g) {
  poly_trim(f);
  poly_trim(g);
  while (!g.empty()) {
    Poly r = poly_mod(F, f, g);
    f = std::move(g);
    g = std::move(r);
  }
  if (f.empty()) return f;
  const Element lead_inv = gf_inv(F, f.back());
  for (Element& c : f) c = gf_mul(F, c, lead_inv);
  return f;
}

Poly poly_powmod(const FieldDescriptor& F, const Poly& base, const BigInt& e, const Poly& modulus) {
  Poly result{gf_one(F)};
  result = poly_mod(F, result, modulus);
  if (e == 0) return result;
  const Poly b = poly_mod(F, base, modulus);
  const std::size_t top = boost::multiprecision::msb(e);
  for (std::size_t i = top + 1; i-- > 0;) {
    result = poly_mod(F, poly_mul(F, result, result), modulus);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) result = poly_mod(F, poly_mul(F, result, b), modulus);
  }
  return result;
}

Element poly_eval(const FieldDescriptor& F, const Poly& f, const Element& x) {
  Element acc = gf_zero(F);
  for (std::size_t i = f.size(); i-- > 0;) acc = gf_add(F, gf_mul(F, acc, x), f[i]);
  return acc;
}

bool poly_irreducible(const FieldDescriptor& F, const Poly& coeffs) {
  Poly f = coeffs;
  poly_trim(f);
  if (f.size() < 2) throw Error(ErrorCode::ValidationError, "polynomial must have degree at least 1");
  if (f.back() != gf_one(F)) throw Error(ErrorCode::ValidationError, "polynomial must be monic");
  const std::size_t d = f.size() - 1;
  if (d == 1) return true;
  if (gf_is_zero(f[0])) return false;
  const BigInt q = F.cardinality();
  const Poly x{gf_zero(F), gf_one(F)};
  Poly h = x;
  for (std::size_t i = 1; i <= d / 2; ++i) {
    h = poly_powmod(F, h, q, f);
    const Poly g = poly_gcd(F, f, poly_sub(F, h, x));
    if (g.size() >= 2) return false;
  }
  return true;
}

// FieldTable -----------------------------------------------------------------

FieldTable::FieldTable(const FieldDescriptor& F) {
  const auto q = F.small_cardinality();
  if (!q || *q > (1U << 16)) throw Error(ErrorCode::TooLarge, "field tables are limited to 2^16 elements");
  size_ = static_cast<std::uint32_t>(*q);
  p_ = static_cast<std::uint32_t>(F.characteristic());
  dim_ = static_cast<std::uint32_t>(F.dimension());

  const std::uint64_t order = size_ - 1;
  std::vector<std::uint64_t> prime_factors;
  std::uint64_t m = order;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d != 0) continue;
    prime_factors.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) prime_factors.push_back(m);

  Element g;
  for (std::uint64_t idx = 1; idx < size_; ++idx) {
    g = element_from_index(F, idx);
    const bool primitive = std::all_of(prime_factors.begin(), prime_factors.end(), [&](std::uint64_t l) {
      return gf_pow(F, g, BigInt(order / l)) != gf_one(F);
    });
    if (primitive) break;
  }
  exp_.resize(order);
  log_.assign(size_, 0);
  Element cur = gf_one(F);
  for (std::uint64_t i = 0; i < order; ++i) {
    const auto idx = static_cast<std::uint32_t>(element_index(F, cur));
    exp_[i] = idx;
    log_[idx] = static_cast<std::uint32_t>(i);
    cur = gf_mul(F, cur, g);
  }
  if (size_ <= 256) {
    add_.resize(std::size_t{size_} * size_);
    for (std::uint32_t a = 0; a < size_; ++a) {
      for (std::uint32_t b = 0; b < size_; ++b) {
        std::uint32_t x = a, y = b, r = 0, w = 1;
        for (std::uint32_t k = 0; k < dim_; ++k) {
          r += ((x % p_ + y % p_) % p_) * w;
          x /= p_;
          y /= p_;
          w *= p_;
        }
        add_[std::size_t{a} * size_ + b] = r;
      }
    }
  }
}

std::uint32_t FieldTable::add(std::uint32_t a, std::uint32_t b) const {
  if (!add_.empty()) return add_[std::size_t{a} * size_ + b];
  if (p_ == 2) return a ^ b;
  std::uint32_t r = 0, w = 1;
  for (std::uint32_t k = 0; k < dim_; ++k) {
    r += ((a % p_ + b % p_) % p_) * w;
    a /= p_;
    b /= p_;
    w *= p_;
  }
  return r;
}

std::uint32_t FieldTable::neg(std::uint32_t a) const {
  if (p_ == 2) return a;
  std::uint32_t r = 0, w = 1;
  for (std::uint32_t k = 0; k < dim_; ++k) {
    r += ((p_ - a % p_) % p_) * w;
    a /= p_;
    w *= p_;
  }
  return r;
}

std::uint32_t FieldTable::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FieldTable::inv(std::uint32_t a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const std::uint32_t order = size_ - 1;
  return exp_[(order - log_[a]) % order];
}

}  // namespace bilmult
