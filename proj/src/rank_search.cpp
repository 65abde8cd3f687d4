// SPDX-License-Identifier: Apache-2.0
#include "bilmult/rank_search.hpp"

#include <algorithm>
#include <atomic>

#include "bilmult/error.hpp"

namespace bilmult {

const char* outcome_name(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::Found: return "Found";
    case SearchOutcome::ExhaustedNoneExists: return "ExhaustedNoneExists";
    case SearchOutcome::Aborted: return "Aborted";
  }
  return "Unknown";
}

namespace {

using Vec = std::vector<std::uint8_t>;     // n base-field indices
using Tensor = std::vector<std::uint8_t>;  // n^3 base-field indices, [(j*n + k)*n + l]

struct BudgetExceeded {};

class Searcher {
 public:
  Searcher(const FieldDescriptor& K, std::size_t n, bool normalize)
      : K_(K), E_(field_extend(K, n)), table_(K), q_(table_.size()), n_(n), normalize_(normalize) {
    std::uint32_t qn = 1;
    for (std::size_t i = 0; i < n; ++i) qn *= q_;
    ab_pos_.assign(qn, 0);
    for (std::uint32_t v = 1; v < qn; ++v) {
      const Vec coords = digits(v);
      const auto first = std::find_if(coords.begin(), coords.end(), [](std::uint8_t c) { return c != 0; });
      if (!normalize_ || *first == 1) {
        ab_pos_[v] = static_cast<std::uint32_t>(ab_.size());
        ab_.push_back(coords);
      }
      c_.push_back(coords);
    }
    for (const Vec& a : ab_) {
      for (const Vec& b : ab_) {
        for (const Vec& c : c_) cand_.push_back(outer(a, b, c));
      }
    }
    target_.assign(n * n * n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const auto prod = coordinates_over(E_, K, gf_mul(E_, basis(j), basis(k)));
        for (std::size_t l = 0; l < n; ++l) target_[(j * n + k) * n + l] = static_cast<std::uint8_t>(element_index(K, prod[l]));
      }
    }
  }

  std::size_t candidates() const { return cand_.size(); }

  bool root_prunes(std::size_t rank) const { return flattening_rank(target_) > rank; }

  // Explores the subtree whose smallest candidate is `first`. On success `chosen`
  // holds the candidate indices of all `rank` terms.
  bool subtree(std::size_t first, std::size_t rank, std::uint64_t& nodes, std::uint64_t limit, std::vector<std::size_t>& chosen) const {
    chosen.assign(1, first);
    return dfs(subtract(target_, cand_[first]), rank - 1, first, nodes, limit, chosen);
  }

  BilinearDecomposition build(const std::vector<std::size_t>& chosen) const {
    std::vector<Triple> triples;
    for (std::size_t idx : chosen) {
      const std::size_t ic = idx % c_.size();
      const std::size_t ib = (idx / c_.size()) % ab_.size();
      const std::size_t ia = idx / (c_.size() * ab_.size());
      Triple t;
      for (std::size_t i = 0; i < n_; ++i) {
        t.a.push_back(element_from_index(K_, ab_[ia][i]));
        t.b.push_back(element_from_index(K_, ab_[ib][i]));
        t.c.push_back(element_from_index(K_, c_[ic][i]));
      }
      triples.push_back(std::move(t));
    }
    return BilinearDecomposition(K_, E_, std::move(triples));
  }

 private:
  Element basis(std::size_t j) const {
    std::vector<Element> e(n_, gf_zero(K_));
    e[j] = gf_one(K_);
    return from_coordinates(E_, K_, e);
  }

  Vec digits(std::uint32_t v) const {
    Vec out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      out[i] = static_cast<std::uint8_t>(v % q_);
      v /= q_;
    }
    return out;
  }

  std::uint32_t index_of(const Vec& v) const {
    std::uint32_t idx = 0;
    for (std::size_t i = n_; i-- > 0;) idx = idx * q_ + v[i];
    return idx;
  }

  Tensor outer(const Vec& a, const Vec& b, const Vec& c) const {
    Tensor t(n_ * n_ * n_);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = 0; k < n_; ++k) {
        const std::uint32_t ab = table_.mul(a[j], b[k]);
        for (std::size_t l = 0; l < n_; ++l) t[(j * n_ + k) * n_ + l] = static_cast<std::uint8_t>(table_.mul(ab, c[l]));
      }
    }
    return t;
  }

  Tensor subtract(const Tensor& x, const Tensor& y) const {
    Tensor r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = static_cast<std::uint8_t>(table_.sub(x[i], y[i]));
    return r;
  }

  template <typename At>
  std::size_t matrix_rank(std::size_t rows, std::size_t cols, At at) const {
    std::vector<std::vector<std::uint32_t>> m(rows, std::vector<std::uint32_t>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = at(i, j);
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
      std::size_t piv = rank;
      while (piv < rows && m[piv][c] == 0) ++piv;
      if (piv == rows) continue;
      std::swap(m[piv], m[rank]);
      const std::uint32_t inv = table_.inv(m[rank][c]);
      for (std::size_t i = rank + 1; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        const std::uint32_t f = table_.mul(m[i][c], inv);
        for (std::size_t j = c; j < cols; ++j) m[i][j] = table_.sub(m[i][j], table_.mul(f, m[rank][j]));
      }
      ++rank;
    }
    return rank;
  }

  // Tensor rank is at least the rank of each of the three flattenings.
  std::size_t flattening_rank(const Tensor& t) const {
    const std::size_t n = n_;
    auto at = [&](std::size_t j, std::size_t k, std::size_t l) { return std::uint32_t{t[(j * n + k) * n + l]}; };
    const std::size_t r1 = matrix_rank(n, n * n, [&](std::size_t i, std::size_t c) { return at(i, c / n, c % n); });
    const std::size_t r2 = matrix_rank(n, n * n, [&](std::size_t i, std::size_t c) { return at(c / n, i, c % n); });
    const std::size_t r3 = matrix_rank(n, n * n, [&](std::size_t i, std::size_t c) { return at(c / n, c % n, i); });
    return std::max({r1, r2, r3});
  }

  // Candidate index of t when t = a (x) b (x) c. The first nonzero entry (j0, k0, l0)
  // fixes a normalized a and b; the result is unique in normalized mode.
  std::optional<std::size_t> extract(const Tensor& t) const {
    const std::size_t n = n_;
    const auto nz = std::find_if(t.begin(), t.end(), [](std::uint8_t v) { return v != 0; });
    if (nz == t.end()) return std::nullopt;
    const auto pos = static_cast<std::size_t>(nz - t.begin());
    const std::size_t j0 = pos / (n * n), k0 = (pos / n) % n, l0 = pos % n;
    const std::uint32_t pivot_inv = table_.inv(*nz);
    Vec a(n), b(n), c(n);
    for (std::size_t l = 0; l < n; ++l) c[l] = t[(j0 * n + k0) * n + l];
    for (std::size_t j = 0; j < n; ++j) a[j] = static_cast<std::uint8_t>(table_.mul(t[(j * n + k0) * n + l0], pivot_inv));
    for (std::size_t k = 0; k < n; ++k) b[k] = static_cast<std::uint8_t>(table_.mul(t[(j0 * n + k) * n + l0], pivot_inv));
    if (outer(a, b, c) != t) return std::nullopt;
    return (std::size_t{ab_pos_[index_of(a)]} * ab_.size() + ab_pos_[index_of(b)]) * c_.size() + (index_of(c) - 1);
  }

  bool dfs(const Tensor& residual, std::size_t rem, std::size_t start, std::uint64_t& nodes, std::uint64_t limit,
           std::vector<std::size_t>& chosen) const {
    if (++nodes > limit) throw BudgetExceeded{};
    const bool zero = std::all_of(residual.begin(), residual.end(), [](std::uint8_t v) { return v == 0; });
    // Lower ranks were exhausted first, so a zero residual with terms left cannot occur in a minimal solution.
    if (rem == 0 || zero) return rem == 0 && zero;
    if (flattening_rank(residual) > rem) return false;
    if (rem == 1) {
      const auto last = extract(residual);
      // In normalized mode the multiset order forces the last index to be >= start.
      if (!last || (normalize_ && *last < start)) return false;
      chosen.push_back(*last);
      return true;
    }
    for (std::size_t idx = start; idx < cand_.size(); ++idx) {
      chosen.push_back(idx);
      if (dfs(subtract(residual, cand_[idx]), rem - 1, idx, nodes, limit, chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }

  FieldDescriptor K_;
  FieldDescriptor E_;
  FieldTable table_;
  std::uint32_t q_;
  std::size_t n_;
  bool normalize_;
  std::vector<Vec> ab_;
  std::vector<Vec> c_;
  std::vector<std::uint32_t> ab_pos_;
  std::vector<Tensor> cand_;
  Tensor target_;
};

void check_parameters(const FieldDescriptor& K, std::size_t n, std::size_t r_max) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "extension degree must be positive");
  if (r_max == 0 || r_max > kMaxSearchRank) throw Error(ErrorCode::ParameterTooLarge, "r_max must lie in [1, 9]");
  if (big_pow(K.cardinality(), n) > kMaxSearchField) throw Error(ErrorCode::ParameterTooLarge, "q^n must be at most 256");
}

void abort_report(RankSearchReport& rep, const RankSearchOptions& o) {
  rep.nodes_explored = o.budget + 1;
  rep.outcome = SearchOutcome::Aborted;
}

// Searches one rank; returns true when the report is final (Found or Aborted).
// Node accounting: one node for the root, then each subtree in candidate order.
bool search_rank_serial(const Searcher& s, std::size_t r, RankSearchReport& rep, const RankSearchOptions& o) {
  rep.rank = r;
  if (++rep.nodes_explored > o.budget) {
    abort_report(rep, o);
    return true;
  }
  if (s.root_prunes(r)) return false;
  for (std::size_t first = 0; first < s.candidates(); ++first) {
    std::vector<std::size_t> chosen;
    std::uint64_t nodes = 0;
    bool found = false;
    try {
      found = s.subtree(first, r, nodes, o.budget - rep.nodes_explored, chosen);
    } catch (const BudgetExceeded&) {
      abort_report(rep, o);
      return true;
    }
    rep.nodes_explored += nodes;
    if (found) {
      rep.outcome = SearchOutcome::Found;
      rep.decomposition = s.build(chosen);
      return true;
    }
  }
  return false;
}

// Same contract as search_rank_serial. Subtrees run concurrently with private
// counters; the merge replays them in candidate order, so the report is schedule-free.
bool search_rank_parallel(const Searcher& s, std::size_t r, RankSearchReport& rep, const RankSearchOptions& o) {
  rep.rank = r;
  if (++rep.nodes_explored > o.budget) {
    abort_report(rep, o);
    return true;
  }
  if (s.root_prunes(r)) return false;
  const std::size_t C = s.candidates();
  const std::uint64_t remaining = o.budget - rep.nodes_explored;
  enum : char { kExhausted, kFound, kOverBudget, kSkipped };
  std::vector<std::uint64_t> nodes(C, 0);
  std::vector<char> status(C, kExhausted);
  std::vector<std::vector<std::size_t>> chosen(C);
  std::atomic<std::size_t> winner{C};
  const auto count = static_cast<std::int64_t>(C);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto first = static_cast<std::size_t>(i);
    // Subtrees after a success are never reached by the serial order.
    if (first > winner.load()) {
      status[first] = kSkipped;
      continue;
    }
    try {
      if (s.subtree(first, r, nodes[first], remaining, chosen[first])) {
        status[first] = kFound;
        std::size_t cur = winner.load();
        while (first < cur && !winner.compare_exchange_weak(cur, first)) {
        }
      }
    } catch (const BudgetExceeded&) {
      status[first] = kOverBudget;
    }
  }
  std::uint64_t used = 0;
  for (std::size_t first = 0; first < C; ++first) {
    if (status[first] == kOverBudget || used + nodes[first] > remaining) {
      abort_report(rep, o);
      return true;
    }
    used += nodes[first];
    if (status[first] == kFound) {
      rep.nodes_explored += used;
      rep.outcome = SearchOutcome::Found;
      rep.decomposition = s.build(chosen[first]);
      return true;
    }
  }
  rep.nodes_explored += used;
  return false;
}

template <typename SearchRank>
RankSearchReport run_search(const FieldDescriptor& K, std::size_t n, std::size_t r_max, const RankSearchOptions& o, SearchRank search_rank) {
  check_parameters(K, n, r_max);
  RankSearchReport rep;
  rep.q = static_cast<std::uint64_t>(K.cardinality());
  rep.n = n;
  rep.r_max = r_max;
  rep.budget = o.budget;
  const Searcher s(K, n, o.normalize);
  for (std::size_t r = 1; r <= r_max; ++r) {
    if (search_rank(s, r, rep, o)) return rep;
  }
  rep.outcome = SearchOutcome::ExhaustedNoneExists;
  rep.rank = r_max;
  return rep;
}

}  // namespace

RankSearchReport brute_force_rank_serial(const FieldDescriptor& q, std::size_t n, std::size_t r_max, RankSearchOptions options) {
  return run_search(q, n, r_max, options, search_rank_serial);
}

RankSearchReport brute_force_rank(const FieldDescriptor& q, std::size_t n, std::size_t r_max, RankSearchOptions options) {
  return run_search(q, n, r_max, options, search_rank_parallel);
}

}  // namespace bilmult
