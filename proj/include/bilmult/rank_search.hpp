// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exhaustive tensor-rank search for the multiplication tensor of F_{q^n}/F_q.

#include <cstdint>
#include <optional>

#include "bilmult/decomposition.hpp"

namespace bilmult {

enum class SearchOutcome { Found, ExhaustedNoneExists, Aborted };

struct RankSearchOptions {
  std::uint64_t budget = 1'000'000'000;
  // Restrict a and b to vectors whose first nonzero coordinate is 1.
  bool normalize = true;
};

struct RankSearchReport {
  std::uint64_t q = 0;
  std::size_t n = 0;
  std::size_t r_max = 0;
  SearchOutcome outcome = SearchOutcome::ExhaustedNoneExists;
  std::size_t rank = 0;  // Found: the minimal rank; otherwise the last rank fully or partly searched
  std::optional<BilinearDecomposition> decomposition;
  std::uint64_t nodes_explored = 0;
  std::uint64_t budget = 0;
};

inline constexpr std::size_t kMaxSearchRank = 9;
inline constexpr std::uint64_t kMaxSearchField = 256;

// Iterative deepening over r = 1..r_max. Candidates a (x) b (x) c are ordered
// lexicographically by (a, b, c) and each multiset is visited once in nondecreasing
// candidate order. A node is pruned when some flattening of the residual tensor has
// rank above the number of terms left. Both entry points return identical reports.
RankSearchReport brute_force_rank(const FieldDescriptor& q, std::size_t n, std::size_t r_max, RankSearchOptions options = {});
RankSearchReport brute_force_rank_serial(const FieldDescriptor& q, std::size_t n, std::size_t r_max, RankSearchOptions options = {});

const char* outcome_name(SearchOutcome outcome);

}  // namespace bilmult
