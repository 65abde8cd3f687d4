// SPDX-License-Identifier: Apache-2.0
#pragma once

// A bilinear multiplication algorithm for an extension E/K: triples (a, b, c) with
// x*y = sum_i a_i(x) b_i(y) c_i. The forms a_i, b_i and the elements c_i are all
// stored as coordinate vectors over K in the monomial basis of E/K. When E is given
// by several steps over K the basis is the product of the step monomials, ordered
// as in coordinates_over().

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bilmult/gf.hpp"

namespace bilmult {

struct Triple {
  std::vector<Element> a;
  std::vector<Element> b;
  std::vector<Element> c;
  bool operator==(const Triple&) const = default;
};

class BilinearDecomposition {
 public:
  // Checks shapes and coefficient ranges; throws DimensionMismatch or FieldMismatch.
  BilinearDecomposition(FieldDescriptor base, FieldDescriptor extension, std::vector<Triple> triples);

  const FieldDescriptor& base() const { return base_; }
  const FieldDescriptor& extension() const { return extension_; }
  std::size_t n() const { return n_; }
  std::size_t rank() const { return triples_.size(); }
  const std::vector<Triple>& triples() const { return triples_; }
  // Number of extension steps between base and extension (0 when n == 1).
  std::size_t steps() const { return extension_.levels() - base_.levels(); }

  bool operator==(const BilinearDecomposition&) const = default;

 private:
  FieldDescriptor base_;
  FieldDescriptor extension_;
  std::size_t n_ = 0;
  std::vector<Triple> triples_;
};

struct VerifyReport {
  bool valid = false;
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;  // first (j, k), row-major
};

VerifyReport verify_report(const BilinearDecomposition& d);
bool verify_decomposition(const BilinearDecomposition& d);

Element decomposition_apply(const BilinearDecomposition& d, const Element& x, const Element& y);

// Value of the linear form `form` at x, i.e. the dot product with x's coordinates over the base.
Element apply_form(const BilinearDecomposition& d, const std::vector<Element>& form, const Element& x);

struct ExhaustiveReport {
  std::uint64_t pairs_checked = 0;
  std::uint64_t mismatches = 0;
  // Smallest (index(x), index(y)) with a wrong product.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> first_mismatch;
  bool operator==(const ExhaustiveReport&) const = default;
};

inline constexpr std::uint64_t kMaxExhaustiveField = 1ULL << 12;

// Compares the algorithm with field multiplication on all |E|^2 pairs; |E| <= 2^12.
ExhaustiveReport exhaustive_check(const BilinearDecomposition& d);
ExhaustiveReport exhaustive_check_serial(const BilinearDecomposition& d);

}  // namespace bilmult
