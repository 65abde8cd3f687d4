// SPDX-License-Identifier: Apache-2.0
#include "bilmult/decomposition.hpp"

#include <algorithm>

#include "bilmult/error.hpp"

namespace bilmult {

namespace {

void check_vector(const FieldDescriptor& base, const std::vector<Element>& v, std::size_t n, const char* what) {
  if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has wrong length");
  for (const Element& e : v) {
    if (!gf_valid(base, e)) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has an invalid coefficient");
  }
}

Element dot(const FieldDescriptor& K, const std::vector<Element>& form, const std::vector<Element>& coords) {
  Element acc = gf_zero(K);
  for (std::size_t j = 0; j < form.size(); ++j) {
    if (gf_is_zero(form[j]) || gf_is_zero(coords[j])) continue;
    acc = gf_add(K, acc, gf_mul(K, form[j], coords[j]));
  }
  return acc;
}

// Coordinates over the base of sum_i a_i(x) b_i(y) c_i, given the coordinate vectors of x and y.
std::vector<Element> evaluate(const BilinearDecomposition& d, const std::vector<Element>& x, const std::vector<Element>& y) {
  const FieldDescriptor& K = d.base();
  std::vector<Element> acc(d.n(), gf_zero(K));
  for (const Triple& t : d.triples()) {
    const Element s = gf_mul(K, dot(K, t.a, x), dot(K, t.b, y));
    if (gf_is_zero(s)) continue;
    for (std::size_t l = 0; l < d.n(); ++l) acc[l] = gf_add(K, acc[l], gf_mul(K, s, t.c[l]));
  }
  return acc;
}

}  // namespace

BilinearDecomposition::BilinearDecomposition(FieldDescriptor base, FieldDescriptor extension, std::vector<Triple> triples)
    : base_(std::move(base)), extension_(std::move(extension)), triples_(std::move(triples)) {
  if (!extension_.extends(base_)) throw Error(ErrorCode::FieldMismatch, "extension field does not extend the base field");
  n_ = extension_.degree_over(base_);
  for (const Triple& t : triples_) {
    check_vector(base_, t.a, n_, "a*");
    check_vector(base_, t.b, n_, "b*");
    check_vector(base_, t.c, n_, "c");
  }
}

VerifyReport verify_report(const BilinearDecomposition& d) {
  const FieldDescriptor& K = d.base();
  const FieldDescriptor& E = d.extension();
  const std::size_t n = d.n();
  std::vector<Element> basis(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Element> e(n, gf_zero(K));
    e[j] = gf_one(K);
    basis[j] = from_coordinates(E, K, e);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const std::vector<Element> xj = coordinates_over(E, K, basis[j]);
    for (std::size_t k = 0; k < n; ++k) {
      const std::vector<Element> yk = coordinates_over(E, K, basis[k]);
      const std::vector<Element> expected = coordinates_over(E, K, gf_mul(E, basis[j], basis[k]));
      if (evaluate(d, xj, yk) != expected) return VerifyReport{false, std::make_pair(j, k)};
    }
  }
  return VerifyReport{true, std::nullopt};
}

bool verify_decomposition(const BilinearDecomposition& d) { return verify_report(d).valid; }

Element apply_form(const BilinearDecomposition& d, const std::vector<Element>& form, const Element& x) {
  if (form.size() != d.n()) throw Error(ErrorCode::DimensionMismatch, "linear form has wrong length");
  return dot(d.base(), form, coordinates_over(d.extension(), d.base(), x));
}

Element decomposition_apply(const BilinearDecomposition& d, const Element& x, const Element& y) {
  const FieldDescriptor& K = d.base();
  const FieldDescriptor& E = d.extension();
  if (!gf_valid(E, x) || !gf_valid(E, y)) throw Error(ErrorCode::DimensionMismatch, "operand is not an element of the extension");
  return from_coordinates(E, K, evaluate(d, coordinates_over(E, K, x), coordinates_over(E, K, y)));
}

namespace {

// Index-level data for the exhaustive kernels. Extension indices decompose into
// base-q digits that are exactly the coordinates over the base.
struct ExhaustivePlan {
  FieldTable K;
  FieldTable E;
  std::uint32_t q = 0;
  std::uint32_t size = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<std::uint32_t> coords;  // size * n
  std::vector<std::uint32_t> A;       // size * r, a_i(x)
  std::vector<std::uint32_t> B;       // size * r, b_i(y)
  std::vector<std::uint32_t> C;       // r * n

  explicit ExhaustivePlan(const BilinearDecomposition& d) : K(d.base()), E(d.extension()) {
    q = K.size();
    size = E.size();
    n = d.n();
    r = d.rank();
    coords.resize(std::size_t{size} * n);
    for (std::uint32_t x = 0; x < size; ++x) {
      std::uint32_t v = x;
      for (std::size_t j = 0; j < n; ++j) {
        coords[x * n + j] = v % q;
        v /= q;
      }
    }
    auto idx = [&](const Element& e) { return static_cast<std::uint32_t>(element_index(d.base(), e)); };
    std::vector<std::uint32_t> a(r * n), b(r * n);
    C.resize(r * n);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a[i * n + j] = idx(d.triples()[i].a[j]);
        b[i * n + j] = idx(d.triples()[i].b[j]);
        C[i * n + j] = idx(d.triples()[i].c[j]);
      }
    }
    A.resize(std::size_t{size} * r);
    B.resize(std::size_t{size} * r);
    for (std::uint32_t x = 0; x < size; ++x) {
      for (std::size_t i = 0; i < r; ++i) {
        std::uint32_t sa = 0, sb = 0;
        for (std::size_t j = 0; j < n; ++j) {
          sa = K.add(sa, K.mul(a[i * n + j], coords[x * n + j]));
          sb = K.add(sb, K.mul(b[i * n + j], coords[x * n + j]));
        }
        A[x * r + i] = sa;
        B[x * r + i] = sb;
      }
    }
  }

  // Mismatch count in row x and the first bad y (size when none).
  std::pair<std::uint64_t, std::uint32_t> row(std::uint32_t x) const {
    std::vector<std::uint32_t> acc(n);
    std::uint64_t bad = 0;
    std::uint32_t first = size;
    for (std::uint32_t y = 0; y < size; ++y) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t i = 0; i < r; ++i) {
        const std::uint32_t s = K.mul(A[x * r + i], B[y * r + i]);
        if (s == 0) continue;
        for (std::size_t l = 0; l < n; ++l) acc[l] = K.add(acc[l], K.mul(s, C[i * n + l]));
      }
      const std::uint32_t truth = E.mul(x, y);
      if (!std::equal(acc.begin(), acc.end(), coords.begin() + static_cast<std::ptrdiff_t>(std::size_t{truth} * n))) {
        ++bad;
        first = std::min(first, y);
      }
    }
    return {bad, first};
  }
};

void require_enumerable(const BilinearDecomposition& d) {
  const auto size = d.extension().small_cardinality();
  if (!size || *size > kMaxExhaustiveField) throw Error(ErrorCode::TooLarge, "exhaustive check needs an extension of at most 4096 elements");
}

}  // namespace

ExhaustiveReport exhaustive_check_serial(const BilinearDecomposition& d) {
  require_enumerable(d);
  const ExhaustivePlan plan(d);
  ExhaustiveReport rep;
  rep.pairs_checked = std::uint64_t{plan.size} * plan.size;
  for (std::uint32_t x = 0; x < plan.size; ++x) {
    const auto [bad, first] = plan.row(x);
    rep.mismatches += bad;
    if (bad != 0 && !rep.first_mismatch) rep.first_mismatch = std::make_pair(std::uint64_t{x}, std::uint64_t{first});
  }
  return rep;
}

ExhaustiveReport exhaustive_check(const BilinearDecomposition& d) {
  require_enumerable(d);
  const ExhaustivePlan plan(d);
  const std::int64_t size = plan.size;
  std::uint64_t mismatches = 0;
  std::uint64_t first = std::uint64_t{plan.size} * plan.size;  // x * size + y
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : mismatches) reduction(min : first)
  for (std::int64_t x = 0; x < size; ++x) {
    const auto [bad, y] = plan.row(static_cast<std::uint32_t>(x));
    mismatches += bad;
    if (bad != 0) first = std::min<std::uint64_t>(first, static_cast<std::uint64_t>(x) * plan.size + y);
  }
  ExhaustiveReport rep;
  rep.pairs_checked = std::uint64_t{plan.size} * plan.size;
  rep.mismatches = mismatches;
  if (mismatches != 0) rep.first_mismatch = std::make_pair(first / plan.size, first % plan.size);
  return rep;
}

}  // namespace bilmult
