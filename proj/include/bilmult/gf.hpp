// SPDX-License-Identifier: Apache-2.0
#pragma once

// Finite fields as towers of polynomial quotient rings over a prime field.
//
// An element of a field with chain [f_1, ..., f_L] is stored as a flat vector of
// residues mod p of length prod(deg f_i). The top-level coefficient i occupies the
// block [i*sub, (i+1)*sub) where sub is the dimension of the field below, so the
// lowest block of any element is its component in the subfield.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bilmult/exact.hpp"

namespace bilmult {

using Residue = std::uint32_t;
using Element = std::vector<Residue>;
using Poly = std::vector<Element>;  // coefficients low to high

inline constexpr std::uint64_t kMaxPrime = 1ULL << 31;
inline constexpr std::size_t kMaxDimension = 4096;
inline constexpr std::uint64_t kMaxEnumerable = 1ULL << 20;

struct ExtensionStep {
  std::size_t degree = 0;
  Poly modulus;  // c_0 .. c_{degree-1}; the leading 1 is implicit
  bool operator==(const ExtensionStep&) const = default;
};

class FieldDescriptor {
 public:
  static FieldDescriptor prime(std::uint64_t p);

  // Appends a step after checking that the polynomial is monic irreducible over *this.
  FieldDescriptor extended_by(const Poly& low_coefficients) const;

  std::uint64_t characteristic() const { return p_; }
  const std::vector<ExtensionStep>& chain() const { return chain_; }
  std::size_t levels() const { return chain_.size(); }
  std::size_t dimension() const { return dims_.back(); }
  std::size_t dimension_at(std::size_t level) const { return dims_.at(level); }
  std::size_t top_degree() const { return chain_.empty() ? 1 : chain_.back().degree; }

  FieldDescriptor below() const { return truncated(levels() == 0 ? 0 : levels() - 1); }
  FieldDescriptor truncated(std::size_t levels) const;
  bool extends(const FieldDescriptor& base) const;
  std::size_t degree_over(const FieldDescriptor& base) const;

  BigInt cardinality() const;
  // Cardinality when it is at most 2^62.
  std::optional<std::uint64_t> small_cardinality() const;

  bool operator==(const FieldDescriptor& other) const { return p_ == other.p_ && chain_ == other.chain_; }

  // Appends without the irreducibility check; the caller vouches for it.
  FieldDescriptor extended_unchecked(const Poly& low_coefficients) const;

 private:
  std::uint64_t p_ = 2;
  std::vector<ExtensionStep> chain_;
  std::vector<std::size_t> dims_{1};
};

FieldDescriptor field_make_prime(std::uint64_t p);
FieldDescriptor field_extend(const FieldDescriptor& base, std::size_t n);

bool gf_valid(const FieldDescriptor& F, const Element& x);
Element gf_zero(const FieldDescriptor& F);
Element gf_one(const FieldDescriptor& F);
bool gf_is_zero(const Element& x);
Element gf_add(const FieldDescriptor& F, const Element& x, const Element& y);
Element gf_sub(const FieldDescriptor& F, const Element& x, const Element& y);
Element gf_neg(const FieldDescriptor& F, const Element& x);
Element gf_mul(const FieldDescriptor& F, const Element& x, const Element& y);
Element gf_inv(const FieldDescriptor& F, const Element& x);
Element gf_pow(const FieldDescriptor& F, const Element& x, const BigInt& e);
Element gf_from_int(const FieldDescriptor& F, std::uint64_t v);

// Canonical index sum(coords[i] * p^i); fields up to 2^62 elements.
std::uint64_t element_index(const FieldDescriptor& F, const Element& x);
Element element_from_index(const FieldDescriptor& F, std::uint64_t index);

// Moves an element of `base` into `ext`, which must extend `base`.
Element embed(const FieldDescriptor& ext, const FieldDescriptor& base, const Element& x);
// Coordinates of x over `base` in the basis of monomials of the steps above it.
std::vector<Element> coordinates_over(const FieldDescriptor& ext, const FieldDescriptor& base, const Element& x);
Element from_coordinates(const FieldDescriptor& ext, const FieldDescriptor& base, const std::vector<Element>& coords);
// The element x of the top step, i.e. the generator of ext over ext.below().
Element generator(const FieldDescriptor& F);

// Polynomials over F. Results are trimmed (no trailing zero coefficients).
std::size_t poly_degree(const Poly& f);  // degree of the zero polynomial is reported as 0
void poly_trim(Poly& f);
Poly poly_sub(const FieldDescriptor& F, const Poly& f, const Poly& g);
Poly poly_mul(const FieldDescriptor& F, const Poly& f, const Poly& g);
Poly poly_mod(const FieldDescriptor& F, const Poly& f, const Poly& g);
Poly poly_gcd(const FieldDescriptor& F, Poly f, Poly g);
Poly poly_powmod(const FieldDescriptor& F, const Poly& base, const BigInt& e, const Poly& modulus);
Element poly_eval(const FieldDescriptor& F, const Poly& f, const Element& x);

// `coeffs` is the full coefficient vector, low to high, with leading coefficient 1.
bool poly_irreducible(const FieldDescriptor& F, const Poly& coeffs);

// Full table representation for enumeration-sized fields (cardinality <= 2^16).
// Elements are canonical indices; multiplication goes through discrete logs.
class FieldTable {
 public:
  explicit FieldTable(const FieldDescriptor& F);

  std::uint32_t size() const { return size_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= size_ - 1) s -= size_ - 1;
    return exp_[s];
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t primitive() const { return exp_.size() > 1 ? exp_[1] : 1; }

 private:
  std::uint32_t size_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t dim_ = 0;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> add_;  // full table when size <= 256
};

}  // namespace bilmult
