// SPDX-License-Identifier: Apache-2.0
#include "bilmult/constructor.hpp"

#include <algorithm>

#include "bilmult/error.hpp"

namespace bilmult {

InterpolationPlan make_interpolation_plan(const FieldDescriptor& K, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "extension degree must be positive");
  const BigInt q = K.cardinality();
  const std::size_t npts = n >= 2 ? 2 * n - 2 : 0;
  if (q < npts) throw Error(ErrorCode::TooFewPoints, "need q >= 2n-2 evaluation points");
  InterpolationPlan plan;
  plan.base = K;
  plan.extension = field_extend(K, n);
  plan.n = n;
  for (std::size_t i = 0; i < npts; ++i) plan.points.push_back(element_from_index(K, i));
  plan.vandermonde = mat_zero(K, npts, npts);
  for (std::size_t i = 0; i < npts; ++i) {
    Element pw = gf_one(K);
    for (std::size_t j = 0; j < npts; ++j) {
      plan.vandermonde[i][j] = pw;
      pw = gf_mul(K, pw, plan.points[i]);
    }
  }
  plan.vandermonde_inverse = npts == 0 ? Matrix{} : mat_inverse(K, plan.vandermonde);
  const FieldDescriptor& E = plan.extension;
  plan.reduction = mat_zero(K, n, 2 * n - 1);
  Element xj = gf_one(E);
  const Element x = generator(E);
  for (std::size_t j = 0; j < 2 * n - 1; ++j) {
    const auto coords = coordinates_over(E, K, xj);
    for (std::size_t l = 0; l < n; ++l) plan.reduction[l][j] = coords[l];
    xj = gf_mul(E, xj, x);
  }
  return plan;
}

BilinearDecomposition toom_construct(const FieldDescriptor& K, std::size_t n) {
  const InterpolationPlan plan = make_interpolation_plan(K, n);
  const std::size_t npts = plan.points.size();
  const std::size_t top = 2 * n - 2;  // degree of the product
  std::vector<Triple> triples;

  // Product coefficients: P_j = sum_i Vinv[j][i] (ev_i - lead * alpha_i^top) for j < top, P_top = lead.
  // Column i of Vinv gives c_i; the lead column collects -sum_i Vinv[j][i] alpha_i^top plus x^top.
  std::vector<Element> lead_column(top + 1, gf_zero(K));
  lead_column[top] = gf_one(K);
  for (std::size_t i = 0; i < npts; ++i) {
    const Element at = gf_pow(K, plan.points[i], BigInt(top));
    for (std::size_t j = 0; j < top; ++j) lead_column[j] = gf_sub(K, lead_column[j], gf_mul(K, plan.vandermonde_inverse[j][i], at));
  }
  auto reduce = [&](const std::vector<Element>& coeffs) {
    std::vector<Element> c(n, gf_zero(K));
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      for (std::size_t l = 0; l < n; ++l) c[l] = gf_add(K, c[l], gf_mul(K, plan.reduction[l][j], coeffs[j]));
    }
    return c;
  };

  for (std::size_t i = 0; i < npts; ++i) {
    Triple t;
    Element pw = gf_one(K);
    for (std::size_t j = 0; j < n; ++j) {
      t.a.push_back(pw);
      pw = gf_mul(K, pw, plan.points[i]);
    }
    t.b = t.a;
    std::vector<Element> column(top + 1, gf_zero(K));
    for (std::size_t j = 0; j < top; ++j) column[j] = plan.vandermonde_inverse[j][i];
    t.c = reduce(column);
    triples.push_back(std::move(t));
  }
  Triple inf;
  inf.a.assign(n, gf_zero(K));
  inf.a[n - 1] = gf_one(K);
  inf.b = inf.a;
  inf.c = reduce(lead_column);
  triples.push_back(std::move(inf));
  return BilinearDecomposition(K, plan.extension, std::move(triples));
}

TruncatedProductAlgorithm karatsuba_truncated(const FieldDescriptor& K, std::size_t u) {
  const Element z = gf_zero(K), o = gf_one(K), m = gf_neg(K, gf_one(K));
  TruncatedProductAlgorithm alg{K, u, {}};
  if (u == 1) {
    alg.triples.push_back(Triple{{o}, {o}, {o}});
  } else if (u == 2) {
    alg.triples.push_back(Triple{{o, z}, {o, z}, {o, m}});  // a0 b0 -> c0, -c1
    alg.triples.push_back(Triple{{z, o}, {z, o}, {z, m}});  // a1 b1 -> -c1
    alg.triples.push_back(Triple{{o, o}, {o, o}, {z, o}});  // (a0+a1)(b0+b1) -> c1
  } else {
    throw Error(ErrorCode::Unsupported, "truncated products are only constructed for u in {1, 2}");
  }
  return alg;
}

std::vector<Element> truncated_apply(const TruncatedProductAlgorithm& alg, const std::vector<Element>& f, const std::vector<Element>& g) {
  const FieldDescriptor& K = alg.base;
  if (f.size() != alg.u || g.size() != alg.u) throw Error(ErrorCode::DimensionMismatch, "operands must have u coefficients");
  std::vector<Element> out(alg.u, gf_zero(K));
  for (const Triple& t : alg.triples) {
    Element sa = gf_zero(K), sb = gf_zero(K);
    for (std::size_t j = 0; j < alg.u; ++j) {
      sa = gf_add(K, sa, gf_mul(K, t.a[j], f[j]));
      sb = gf_add(K, sb, gf_mul(K, t.b[j], g[j]));
    }
    const Element s = gf_mul(K, sa, sb);
    for (std::size_t l = 0; l < alg.u; ++l) out[l] = gf_add(K, out[l], gf_mul(K, s, t.c[l]));
  }
  return out;
}

bool verify_truncated(const TruncatedProductAlgorithm& alg) {
  const FieldDescriptor& K = alg.base;
  const auto q = K.small_cardinality();
  if (!q || big_pow(BigInt(*q), alg.u) > (1U << 12)) throw Error(ErrorCode::TooLarge, "too many operand pairs");
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < alg.u; ++i) count *= *q;
  auto poly = [&](std::uint64_t idx) {
    std::vector<Element> v(alg.u);
    for (Element& e : v) {
      e = element_from_index(K, idx % *q);
      idx /= *q;
    }
    return v;
  };
  for (std::uint64_t x = 0; x < count; ++x) {
    const auto f = poly(x);
    for (std::uint64_t y = 0; y < count; ++y) {
      const auto g = poly(y);
      std::vector<Element> expect(alg.u, gf_zero(K));
      for (std::size_t i = 0; i < alg.u; ++i) {
        for (std::size_t j = 0; i + j < alg.u; ++j) expect[i + j] = gf_add(K, expect[i + j], gf_mul(K, f[i], g[j]));
      }
      if (truncated_apply(alg, f, g) != expect) return false;
    }
  }
  return true;
}

// Isomorphisms ------------------------------------------------------------------

namespace {

constexpr std::uint64_t kScanBlock = 4096;

bool is_root(const FieldDescriptor& F, const Poly& f, std::uint64_t idx) {
  return gf_is_zero(poly_eval(F, f, element_from_index(F, idx)));
}

std::uint64_t scan_limit(const FieldDescriptor& F) {
  const auto size = F.small_cardinality();
  if (!size || *size > kMaxEnumerable) throw Error(ErrorCode::TooLarge, "root scan is limited to fields of at most 2^20 elements");
  return *size;
}

}  // namespace

std::optional<std::uint64_t> find_smallest_root_serial(const FieldDescriptor& F, const Poly& f) {
  const std::uint64_t size = scan_limit(F);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    if (is_root(F, f, idx)) return idx;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> find_smallest_root(const FieldDescriptor& F, const Poly& f) {
  const std::uint64_t size = scan_limit(F);
  // Blocks are scanned in order, so the first block with a root holds the smallest one.
  for (std::uint64_t lo = 0; lo < size; lo += kScanBlock) {
    const std::uint64_t hi = std::min(size, lo + kScanBlock);
    std::uint64_t best = hi;
#pragma omp parallel for schedule(static) reduction(min : best)
    for (std::int64_t i = static_cast<std::int64_t>(lo); i < static_cast<std::int64_t>(hi); ++i) {
      if (is_root(F, f, static_cast<std::uint64_t>(i))) best = std::min<std::uint64_t>(best, static_cast<std::uint64_t>(i));
    }
    if (best < hi) return best;
  }
  return std::nullopt;
}

FieldIsomorphism tower_to_flat_isomorphism(const FieldDescriptor& chain, const FieldDescriptor& flat) {
  if (chain.characteristic() != flat.characteristic() || chain.cardinality() != flat.cardinality()) {
    throw Error(ErrorCode::FieldMismatch, "fields differ in characteristic or size");
  }
  FieldIsomorphism iso;
  iso.base = flat.levels() == 0 ? flat : flat.below();
  if (!chain.extends(iso.base)) throw Error(ErrorCode::FieldMismatch, "chain field does not contain the base of the flat field");
  iso.chain = chain;
  iso.flat = flat;
  const std::size_t n = flat.degree_over(iso.base);
  if (chain == flat || flat.levels() == 0) {
    iso.root = generator(chain);
    iso.to_chain = mat_identity(iso.base, n);
    iso.to_flat = iso.to_chain;
    return iso;
  }
  Poly f;
  for (const Element& c : flat.chain().back().modulus) f.push_back(embed(chain, iso.base, c));
  f.push_back(gf_one(chain));
  const auto root = find_smallest_root(chain, f);
  if (!root) throw Error(ErrorCode::NoRootFound, "flat modulus has no root in the chain field");
  iso.root = element_from_index(chain, *root);
  iso.to_chain = mat_zero(iso.base, n, n);
  Element pw = gf_one(chain);
  for (std::size_t i = 0; i < n; ++i) {
    const auto coords = coordinates_over(chain, iso.base, pw);
    for (std::size_t j = 0; j < n; ++j) iso.to_chain[j][i] = coords[j];
    pw = gf_mul(chain, pw, iso.root);
  }
  iso.to_flat = mat_inverse(iso.base, iso.to_chain);
  return iso;
}

Element map_to_chain(const FieldIsomorphism& iso, const Element& x) {
  return from_coordinates(iso.chain, iso.base, mat_vec(iso.base, iso.to_chain, coordinates_over(iso.flat, iso.base, x)));
}

Element map_to_flat(const FieldIsomorphism& iso, const Element& x) {
  return from_coordinates(iso.flat, iso.base, mat_vec(iso.base, iso.to_flat, coordinates_over(iso.chain, iso.base, x)));
}

BilinearDecomposition rebase_to_flat(const BilinearDecomposition& d, const FieldIsomorphism& iso) {
  if (!(d.base() == iso.base) || !(d.extension() == iso.chain)) throw Error(ErrorCode::FieldMismatch, "isomorphism does not match the decomposition");
  const FieldDescriptor& K = iso.base;
  const Matrix Tt = mat_transpose(iso.to_chain);
  std::vector<Triple> triples;
  triples.reserve(d.rank());
  for (const Triple& t : d.triples()) {
    triples.push_back(Triple{mat_vec(K, Tt, t.a), mat_vec(K, Tt, t.b), mat_vec(K, iso.to_flat, t.c)});
  }
  return BilinearDecomposition(K, iso.flat, std::move(triples));
}

// Composition -------------------------------------------------------------------

BilinearDecomposition compose_decompositions(const BilinearDecomposition& outer, const BilinearDecomposition& inner, ComposeOptions options) {
  if (!(outer.base() == inner.extension())) throw Error(ErrorCode::FieldMismatch, "inner extension field is not the outer base field");
  const FieldDescriptor& L = inner.base();
  const FieldDescriptor& M = inner.extension();
  const FieldDescriptor& E = outer.extension();
  const std::size_t d = inner.n();
  const std::size_t m = outer.n();

  // basis[k] is the k-th basis element of M over L.
  std::vector<Element> basis(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Element> e(d, gf_zero(L));
    e[k] = gf_one(L);
    basis[k] = from_coordinates(M, L, e);
  }
  auto dot = [&](const std::vector<Element>& form, const Element& z) {
    const auto coords = coordinates_over(M, L, z);
    Element acc = gf_zero(L);
    for (std::size_t k = 0; k < d; ++k) acc = gf_add(L, acc, gf_mul(L, form[k], coords[k]));
    return acc;
  };

  std::vector<Triple> triples;
  triples.reserve(outer.rank() * inner.rank());
  for (const Triple& o : outer.triples()) {
    for (const Triple& in : inner.triples()) {
      const Element gamma = from_coordinates(M, L, in.c);
      Triple t;
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
          t.a.push_back(dot(in.a, gf_mul(M, o.a[j], basis[k])));
          t.b.push_back(dot(in.b, gf_mul(M, o.b[j], basis[k])));
        }
        for (const Element& c : coordinates_over(M, L, gf_mul(M, gamma, o.c[j]))) t.c.push_back(c);
      }
      triples.push_back(std::move(t));
    }
  }
  BilinearDecomposition tower(L, E, std::move(triples));
  if (options.keep_tower_basis) return tower;
  const FieldDescriptor flat = field_extend(L, d * m);
  if (E == flat) return tower;
  return rebase_to_flat(tower, tower_to_flat_isomorphism(E, flat));
}

}  // namespace bilmult
