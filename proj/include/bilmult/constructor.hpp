// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "bilmult/decomposition.hpp"
#include "bilmult/linalg.hpp"

namespace bilmult {

// Evaluation at 2n-2 points of F_q plus infinity, then interpolation of the degree
// 2n-2 product and reduction modulo the canonical degree-n modulus.
struct InterpolationPlan {
  FieldDescriptor base;
  FieldDescriptor extension;
  std::size_t n = 0;
  std::vector<Element> points;  // field elements with index 0, 1, ..., 2n-3
  Matrix vandermonde;           // (2n-2) x (2n-2), row i = powers of points[i]
  Matrix vandermonde_inverse;
  Matrix reduction;             // n x (2n-1), column j = coordinates of x^j mod f
};

// Requires |F_q| >= 2n - 2; throws TooFewPoints otherwise.
InterpolationPlan make_interpolation_plan(const FieldDescriptor& q, std::size_t n);

// Rank 2n-1 decomposition; the last triple is the point at infinity.
BilinearDecomposition toom_construct(const FieldDescriptor& q, std::size_t n);

// Product of two u-term polynomials modulo x^u. Forms act on coefficient vectors and
// c holds the contribution to the result coefficients.
struct TruncatedProductAlgorithm {
  FieldDescriptor base;
  std::size_t u = 0;
  std::vector<Triple> triples;
  std::size_t rank() const { return triples.size(); }
};

TruncatedProductAlgorithm karatsuba_truncated(const FieldDescriptor& q, std::size_t u);
std::vector<Element> truncated_apply(const TruncatedProductAlgorithm& alg, const std::vector<Element>& f, const std::vector<Element>& g);
// Checks all q^u x q^u pairs against schoolbook multiplication modulo x^u.
bool verify_truncated(const TruncatedProductAlgorithm& alg);

// phi: flat -> chain, sending the generator of flat over its base to `root`.
// to_chain maps flat coordinates to chain coordinates over `base`; to_flat is its inverse.
struct FieldIsomorphism {
  FieldDescriptor base;
  FieldDescriptor chain;
  FieldDescriptor flat;
  Element root;
  Matrix to_chain;
  Matrix to_flat;
};

// `flat` must be a single extension step over a subfield that `chain` also extends.
// The root is the smallest-index root of flat's modulus inside chain (|chain| <= 2^20).
FieldIsomorphism tower_to_flat_isomorphism(const FieldDescriptor& chain, const FieldDescriptor& flat);

Element map_to_chain(const FieldIsomorphism& iso, const Element& x);
Element map_to_flat(const FieldIsomorphism& iso, const Element& x);

// Smallest canonical index of a root of f (coefficients in F) among the elements of F.
std::optional<std::uint64_t> find_smallest_root(const FieldDescriptor& F, const Poly& f);
std::optional<std::uint64_t> find_smallest_root_serial(const FieldDescriptor& F, const Poly& f);

// Transports d (over iso.base, extension iso.chain) to the flat field.
BilinearDecomposition rebase_to_flat(const BilinearDecomposition& d, const FieldIsomorphism& iso);

struct ComposeOptions {
  bool keep_tower_basis = false;
};

// outer: F_{Q^m}/F_Q, inner: F_Q/F_q with Q = q^d. The result has rank
// rank(outer) * rank(inner) and is re-based to field_extend(F_q, d*m) unless the
// tower basis is kept. Throws FieldMismatch when inner's extension is not outer's base.
BilinearDecomposition compose_decompositions(const BilinearDecomposition& outer, const BilinearDecomposition& inner,
                                             ComposeOptions options = {});

}  // namespace bilmult
