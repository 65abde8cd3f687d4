// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "bilmult/error.hpp"
#include "bilmult/gf.hpp"

using namespace bilmult;

namespace {

struct FieldCase {
  const char* name;
  FieldDescriptor F;
};

std::vector<FieldCase> fields() {
  const FieldDescriptor f4 = field_extend(field_make_prime(2), 2);
  const FieldDescriptor f25 = field_extend(field_make_prime(5), 2);
  return {
      {"F2", field_make_prime(2)},
      {"F7", field_make_prime(7)},
      {"F2147483647", field_make_prime(2147483647)},
      {"F16", field_extend(field_make_prime(2), 4)},
      {"F27", field_extend(field_make_prime(3), 3)},
      {"F64_tower", field_extend(f4, 3)},
      {"F625_tower", field_extend(f25, 2)},
  };
}

Element random_element(const FieldDescriptor& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, F.characteristic() - 1);
  Element x(F.dimension());
  for (auto& c : x) c = static_cast<Residue>(d(rng));
  return x;
}

std::uint64_t count_monic_irreducible(std::uint64_t q, unsigned d) {
  // (1/d) sum_{e | d} mobius(d/e) q^e
  auto mobius = [](unsigned m) {
    int mu = 1;
    for (unsigned p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) return 0;
      mu = -mu;
    }
    return m > 1 ? -mu : mu;
  };
  std::int64_t s = 0;
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    std::int64_t qe = 1;
    for (unsigned i = 0; i < e; ++i) qe *= static_cast<std::int64_t>(q);
    s += mobius(d / e) * qe;
  }
  return static_cast<std::uint64_t>(s / d);
}

}  // namespace

TEST(Gf, FieldAxiomsOnRandomElements) {
  std::mt19937_64 rng(2024);
  for (const auto& [name, F] : fields()) {
    SCOPED_TRACE(name);
    const Element zero = gf_zero(F), one = gf_one(F);
    for (int i = 0; i < 200; ++i) {
      const Element x = random_element(F, rng), y = random_element(F, rng), z = random_element(F, rng);
      ASSERT_TRUE(gf_valid(F, x));
      EXPECT_EQ(gf_add(F, x, y), gf_add(F, y, x));
      EXPECT_EQ(gf_mul(F, x, y), gf_mul(F, y, x));
      EXPECT_EQ(gf_add(F, gf_add(F, x, y), z), gf_add(F, x, gf_add(F, y, z)));
      EXPECT_EQ(gf_mul(F, gf_mul(F, x, y), z), gf_mul(F, x, gf_mul(F, y, z)));
      EXPECT_EQ(gf_mul(F, x, gf_add(F, y, z)), gf_add(F, gf_mul(F, x, y), gf_mul(F, x, z)));
      EXPECT_EQ(gf_add(F, x, zero), x);
      EXPECT_EQ(gf_mul(F, x, one), x);
      EXPECT_TRUE(gf_is_zero(gf_add(F, x, gf_neg(F, x))));
      EXPECT_EQ(gf_sub(F, gf_add(F, x, y), y), x);
      if (!gf_is_zero(x)) {
        EXPECT_EQ(gf_mul(F, x, gf_inv(F, x)), one);
      }
    }
  }
}

TEST(Gf, FrobeniusFixesEveryElement) {
  std::mt19937_64 rng(5);
  for (const auto& [name, F] : fields()) {
    SCOPED_TRACE(name);
    const BigInt card = F.cardinality();
    for (int i = 0; i < 20; ++i) {
      const Element x = random_element(F, rng);
      EXPECT_EQ(gf_pow(F, x, card), x);
    }
  }
}

TEST(Gf, InverseOfZeroThrows) {
  const FieldDescriptor F = field_extend(field_make_prime(3), 2);
  EXPECT_THROW(gf_inv(F, gf_zero(F)), Error);
}

TEST(Gf, RejectsCompositeAndReducible) {
  EXPECT_THROW(field_make_prime(6), Error);
  EXPECT_THROW(field_make_prime(1), Error);
  const FieldDescriptor F2 = field_make_prime(2);
  // x^2 + 1 = (x + 1)^2 over F_2
  EXPECT_THROW(F2.extended_by(Poly{Element{1}, Element{0}}), Error);
}

TEST(Gf, IrreducibleCountMatchesNecklaceFormula) {
  struct Case {
    std::uint64_t p;
    unsigned base_degree;
    unsigned max_degree;
  };
  for (const Case c : {Case{2, 1, 6}, Case{3, 1, 4}, Case{2, 2, 3}, Case{5, 1, 3}}) {
    const FieldDescriptor F = c.base_degree == 1 ? field_make_prime(c.p) : field_extend(field_make_prime(c.p), c.base_degree);
    const std::uint64_t q = *F.small_cardinality();
    for (unsigned d = 1; d <= c.max_degree; ++d) {
      std::uint64_t total = 1;
      for (unsigned i = 0; i < d; ++i) total *= q;
      std::uint64_t count = 0;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        Poly f;
        std::uint64_t v = idx;
        for (unsigned i = 0; i < d; ++i, v /= q) f.push_back(element_from_index(F, v % q));
        f.push_back(gf_one(F));
        count += poly_irreducible(F, f) ? 1 : 0;
      }
      EXPECT_EQ(count, count_monic_irreducible(q, d)) << "q=" << q << " d=" << d;
    }
  }
}

TEST(Gf, IndexRoundTripAndTableAgreement) {
  for (const auto& F : {field_extend(field_make_prime(2), 4), field_extend(field_make_prime(3), 2),
                        field_extend(field_extend(field_make_prime(2), 2), 2), field_make_prime(13)}) {
    const FieldTable T(F);
    const std::uint32_t n = T.size();
    for (std::uint32_t a = 0; a < n; ++a) {
      const Element x = element_from_index(F, a);
      ASSERT_EQ(element_index(F, x), a);
      for (std::uint32_t b = 0; b < n; ++b) {
        const Element y = element_from_index(F, b);
        ASSERT_EQ(T.mul(a, b), element_index(F, gf_mul(F, x, y)));
        ASSERT_EQ(T.add(a, b), element_index(F, gf_add(F, x, y)));
        ASSERT_EQ(T.sub(a, b), element_index(F, gf_sub(F, x, y)));
      }
      if (a) {
        EXPECT_EQ(T.mul(a, T.inv(a)), 1u);
      }
    }
  }
}

TEST(Gf, EmbeddingIsARingHomomorphism) {
  const FieldDescriptor base = field_extend(field_make_prime(2), 2);
  const FieldDescriptor ext = field_extend(base, 3);
  ASSERT_TRUE(ext.extends(base));
  EXPECT_EQ(ext.degree_over(base), 3u);
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 0; b < 4; ++b) {
      const Element x = element_from_index(base, a), y = element_from_index(base, b);
      EXPECT_EQ(embed(ext, base, gf_mul(base, x, y)), gf_mul(ext, embed(ext, base, x), embed(ext, base, y)));
      EXPECT_EQ(embed(ext, base, gf_add(base, x, y)), gf_add(ext, embed(ext, base, x), embed(ext, base, y)));
    }
}

TEST(Gf, CoordinatesRoundTrip) {
  const FieldDescriptor base = field_make_prime(3);
  const FieldDescriptor mid = field_extend(base, 2);
  const FieldDescriptor top = field_extend(mid, 2);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const Element x = random_element(top, rng);
    for (const auto& B : {base, mid}) {
      const auto coords = coordinates_over(top, B, x);
      EXPECT_EQ(coords.size(), top.degree_over(B));
      EXPECT_EQ(from_coordinates(top, B, coords), x);
    }
  }
}

TEST(Gf, GeneratorSatisfiesTopModulus) {
  const FieldDescriptor F = field_extend(field_extend(field_make_prime(2), 2), 3);
  const FieldDescriptor below = F.below();
  Poly f;
  for (const auto& c : F.chain().back().modulus) f.push_back(embed(F, below, c));
  f.push_back(gf_one(F));
  EXPECT_TRUE(gf_is_zero(poly_eval(F, f, generator(F))));
}

TEST(Gf, PolynomialGcdAndPowmod) {
  const FieldDescriptor F = field_make_prime(5);
  auto c = [&](std::uint64_t v) { return gf_from_int(F, v); };
  // (x - 1)(x - 2) and (x - 1)(x - 3) share x - 1.
  const Poly a = poly_mul(F, Poly{c(4), c(1)}, Poly{c(3), c(1)});
  const Poly b = poly_mul(F, Poly{c(4), c(1)}, Poly{c(2), c(1)});
  Poly g = poly_gcd(F, a, b);
  ASSERT_EQ(poly_degree(g), 1u);
  EXPECT_TRUE(gf_is_zero(poly_eval(F, g, c(1))));
  // Modulo x^2 + 2 over F_5: x^4 = 4, so x^5 = 4x.
  const Poly r = poly_powmod(F, Poly{c(0), c(1)}, BigInt(5), Poly{c(2), c(0), c(1)});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], c(0));
  EXPECT_EQ(r[1], c(4));
}

TEST(Gf, SmallFieldExamples) {
  const FieldDescriptor F2 = field_make_prime(2);
  const FieldDescriptor F4 = field_extend(F2, 2);
  ASSERT_EQ(F4.chain().size(), 1u);
  EXPECT_EQ(F4.chain()[0].modulus, (Poly{Element{1}, Element{1}}));  // x^2 + x + 1
  EXPECT_EQ(field_extend(F2, 1), F2);
  EXPECT_EQ(field_extend(field_make_prime(3), 2).chain()[0].modulus, (Poly{Element{1}, Element{0}}));  // x^2 + 1
  const Element x = generator(F4);
  EXPECT_EQ(gf_mul(F4, x, x), (Element{1, 1}));
  const FieldDescriptor F5 = field_make_prime(5);
  EXPECT_EQ(gf_inv(F5, gf_from_int(F5, 2)), gf_from_int(F5, 3));
  EXPECT_TRUE(poly_irreducible(F2, Poly{Element{1}, Element{1}, Element{1}}));
  EXPECT_FALSE(poly_irreducible(F2, Poly{Element{1}, Element{0}, Element{1}}));
  const FieldDescriptor F3 = field_make_prime(3);
  EXPECT_TRUE(poly_irreducible(F3, Poly{Element{1}, Element{0}, Element{1}}));
  try {
    field_make_prime(4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrime);
  }
}
