// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "bilmult/constructor.hpp"
#include "bilmult/decomposition.hpp"
#include "bilmult/error.hpp"
#include "bilmult/json_io.hpp"

using namespace bilmult;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(BILMULT_FIXTURES) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const FieldDescriptor& f2() {
  static const FieldDescriptor F = field_make_prime(2);
  return F;
}

const FieldDescriptor& f4() {
  static const FieldDescriptor F = field_extend(field_make_prime(2), 2);
  return F;
}

BilinearDecomposition corrupt(const BilinearDecomposition& d, std::size_t triple, std::size_t coord) {
  auto triples = d.triples();
  Element& c = triples[triple].c[coord];
  c[0] = static_cast<Residue>((c[0] + 1) % d.base().characteristic());
  return BilinearDecomposition(d.base(), d.extension(), triples);
}

}  // namespace

TEST(Decomposition, HandWrittenKaratsubaFixtureVerifies) {
  const BilinearDecomposition d = decomposition_from_json(fixture("karatsuba_f4.json"));
  EXPECT_EQ(d.rank(), 3u);
  EXPECT_EQ(d.n(), 2u);
  EXPECT_TRUE(verify_decomposition(d));
  const ExhaustiveReport ex = exhaustive_check(d);
  EXPECT_EQ(ex.pairs_checked, 16u);
  EXPECT_EQ(ex.mismatches, 0u);
}

TEST(Decomposition, BrokenFixtureReportsFirstBasisPair) {
  EXPECT_THROW(decomposition_from_json(fixture("karatsuba_f4_broken.json")), Error);
  const BilinearDecomposition d = decomposition_from_json(fixture("karatsuba_f4_broken.json"), true);
  const VerifyReport rep = verify_report(d);
  EXPECT_FALSE(rep.valid);
  ASSERT_TRUE(rep.failing_pair);
  EXPECT_EQ(*rep.failing_pair, std::make_pair(std::size_t{1}, std::size_t{1}));
}

TEST(Decomposition, MalformedJsonRejected) {
  try {
    decomposition_from_json(fixture("malformed.json"));
    FAIL() << "expected ValidationError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
  }
  try {
    decomposition_from_json("{not json");
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(Decomposition, ShapeChecks) {
  const BilinearDecomposition d = toom_construct(f2(), 2);
  auto triples = d.triples();
  triples[0].a.pop_back();
  EXPECT_THROW(BilinearDecomposition(d.base(), d.extension(), triples), Error);
  EXPECT_THROW(BilinearDecomposition(f4(), d.extension(), d.triples()), Error);
}

TEST(Decomposition, JsonRoundTripIsIdentity) {
  const std::vector<BilinearDecomposition> ds = {
      toom_construct(f2(), 1),         toom_construct(f2(), 2), toom_construct(field_make_prime(7), 4),
      toom_construct(f4(), 3),         toom_construct(field_extend(field_make_prime(3), 2), 5),
      compose_decompositions(toom_construct(f4(), 3), toom_construct(f2(), 2), {true})};
  for (const auto& d : ds) {
    const std::string text = decomposition_to_json(d);
    const BilinearDecomposition back = decomposition_from_json(text);
    EXPECT_EQ(back, d);
    EXPECT_EQ(decomposition_to_json(back), text);
  }
}

TEST(Decomposition, BasisVerifyAgreesWithExhaustiveCheckUnderCorruption) {
  const BilinearDecomposition good = toom_construct(f4(), 3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const std::size_t t = rng() % good.rank(), c = rng() % good.n();
    const BilinearDecomposition bad = corrupt(good, t, c);
    const ExhaustiveReport par = exhaustive_check(bad);
    const ExhaustiveReport ser = exhaustive_check_serial(bad);
    EXPECT_EQ(par, ser);
    EXPECT_EQ(verify_decomposition(bad), par.mismatches == 0);
  }
}

TEST(Decomposition, ApplyMatchesFieldMultiplication) {
  const BilinearDecomposition d = toom_construct(field_make_prime(5), 3);
  const FieldDescriptor& E = d.extension();
  for (std::uint64_t a = 0; a < 125; a += 7)
    for (std::uint64_t b = 0; b < 125; b += 5) {
      const Element x = element_from_index(E, a), y = element_from_index(E, b);
      EXPECT_EQ(decomposition_apply(d, x, y), gf_mul(E, x, y));
    }
}

TEST(Decomposition, KaratsubaHandProducts) {
  const BilinearDecomposition d = decomposition_from_json(fixture("karatsuba_f4.json"));
  const FieldDescriptor& E = d.extension();
  const Element x = generator(E), one = gf_one(E), zero = gf_zero(E);
  EXPECT_EQ(decomposition_apply(d, x, gf_add(E, x, one)), one);  // x^2 + x = 1
  for (std::uint64_t i = 0; i < 4; ++i) {
    const Element y = element_from_index(E, i);
    EXPECT_EQ(decomposition_apply(d, y, one), y);
    EXPECT_EQ(decomposition_apply(d, zero, y), zero);
  }
  // Zeroing any c_i breaks the algorithm.
  for (std::size_t t = 0; t < d.rank(); ++t) {
    auto triples = d.triples();
    for (auto& c : triples[t].c) c = Element{0};
    EXPECT_FALSE(verify_decomposition(BilinearDecomposition(d.base(), d.extension(), triples))) << t;
  }
}

TEST(Decomposition, ExhaustiveSerialEqualsParallel) {
  for (const auto& d : {toom_construct(f4(), 3), toom_construct(field_make_prime(7), 4), toom_construct(f2(), 2)}) {
    const ExhaustiveReport a = exhaustive_check(d), b = exhaustive_check_serial(d);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.mismatches, 0u);
  }
}

TEST(Decomposition, ExhaustiveRefusesLargeFields) {
  const BilinearDecomposition d = toom_construct(field_extend(field_make_prime(3), 2), 5);  // 9^5 elements
  EXPECT_THROW(exhaustive_check(d), Error);
}
