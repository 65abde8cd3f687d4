// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "bilmult/decomposition.hpp"
#include "bilmult/error.hpp"
#include "bilmult/rank_search.hpp"

using namespace bilmult;

namespace {

void expect_same(const RankSearchReport& a, const RankSearchReport& b) {
  EXPECT_EQ(a.outcome, b.outcome);
  EXPECT_EQ(a.rank, b.rank);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
  EXPECT_EQ(a.decomposition, b.decomposition);
}

}  // namespace

TEST(RankSearch, DegreeOneHasRankOne) {
  const RankSearchReport rep = brute_force_rank(field_make_prime(3), 1, 2);
  EXPECT_EQ(rep.outcome, SearchOutcome::Found);
  EXPECT_EQ(rep.rank, 1u);
}

TEST(RankSearch, QuadraticExtensionsHaveRankThree) {
  for (std::uint64_t p : {2, 3, 5}) {
    const FieldDescriptor F = field_make_prime(p);
    const RankSearchReport found = brute_force_rank(F, 2, 3);
    EXPECT_EQ(found.outcome, SearchOutcome::Found) << p;
    EXPECT_EQ(found.rank, 3u);
    ASSERT_TRUE(found.decomposition);
    EXPECT_EQ(found.decomposition->rank(), 3u);
    EXPECT_TRUE(verify_decomposition(*found.decomposition));
    const RankSearchReport none = brute_force_rank(F, 2, 2);
    EXPECT_EQ(none.outcome, SearchOutcome::ExhaustedNoneExists) << p;
  }
}

TEST(RankSearch, SerialAndParallelReportsAreIdentical) {
  for (std::uint64_t p : {2, 3}) {
    const FieldDescriptor F = field_make_prime(p);
    for (std::size_t r : {2u, 3u}) expect_same(brute_force_rank(F, 2, r), brute_force_rank_serial(F, 2, r));
  }
  const FieldDescriptor F2 = field_make_prime(2);
  expect_same(brute_force_rank(F2, 3, 4), brute_force_rank_serial(F2, 3, 4));
}

TEST(RankSearch, NormalizationDoesNotChangeTheRank) {
  const FieldDescriptor F = field_make_prime(3);
  const RankSearchReport a = brute_force_rank(F, 2, 3, {1'000'000'000, true});
  const RankSearchReport b = brute_force_rank(F, 2, 3, {1'000'000'000, false});
  EXPECT_EQ(a.rank, b.rank);
  EXPECT_EQ(b.outcome, SearchOutcome::Found);
  EXPECT_GE(b.nodes_explored, a.nodes_explored);
}

TEST(RankSearch, BinaryCubicNeedsSix) {
  const FieldDescriptor F = field_make_prime(2);
  EXPECT_EQ(brute_force_rank(F, 3, 5).outcome, SearchOutcome::ExhaustedNoneExists);
}

TEST(RankSearch, BudgetAborts) {
  const RankSearchReport rep = brute_force_rank(field_make_prime(2), 3, 6, {10, true});
  EXPECT_EQ(rep.outcome, SearchOutcome::Aborted);
  EXPECT_EQ(rep.budget, 10u);
  EXPECT_STREQ(outcome_name(rep.outcome), "Aborted");
}

TEST(RankSearch, Limits) {
  EXPECT_THROW(brute_force_rank(field_make_prime(2), 2, kMaxSearchRank + 1), Error);
  EXPECT_THROW(brute_force_rank(field_make_prime(257), 2, 3), Error);
}
