// SPDX-License-Identifier: Apache-2.0
#pragma once

// Lower and upper bounds on the bilinear complexity mu_q(n) of multiplication in
// F_{q^n} over F_q. Every rule returns an integer that is a theorem for the given
// (q, n); sub-integer slopes stay exact rationals until the final floor.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bilmult/decomposition.hpp"
#include "bilmult/exact.hpp"
#include "bilmult/gf.hpp"
#include "bilmult/json_io.hpp"
#include "bilmult/towers.hpp"

namespace bilmult {

enum class BoundKind { Lower, Upper };

// Declaration order is the tie-break priority among equal upper bounds.
enum class BoundMethod {
  Exact,
  Interpolation,
  TowerSimple,
  DerivativeDeg1,
  DerivativeDeg12,
  Composition,
  LinearConstant,
  AffineQ2,
  LowerRule,
  None,
};

const char* method_name(BoundMethod method);

struct BoundResult {
  std::uint64_t q = 0;
  std::uint64_t n = 0;
  BoundKind kind = BoundKind::Upper;
  BigInt value;
  bool infinite = false;  // no rule applied
  BoundMethod method = BoundMethod::None;
  std::string citation;
  Json parameters = Json::object();
  std::shared_ptr<const BilinearDecomposition> witness;
  // Factor results of a composition (d first, then m); for an exact value met by a
  // composition, that composition.
  std::vector<std::shared_ptr<const BoundResult>> parts;
};

Json bound_to_json(const BoundResult& r);

// Base field F_q with the canonical chain (field_extend of the prime field).
FieldDescriptor base_field(std::uint64_t q);

BoundResult lower_bound(std::uint64_t q, std::uint64_t n);
BoundResult best_lower_bound(std::uint64_t q, std::uint64_t n);
std::optional<BoundResult> exact_value(std::uint64_t q, std::uint64_t n);

// 2n-1 by interpolation; NotApplicable when n > q/2 + 1.
BoundResult interpolation_bound(std::uint64_t q, std::uint64_t n);
BoundResult tower_bound_simple(std::uint64_t q, std::uint64_t n);
BoundResult derivative_bound_deg1(std::uint64_t q, std::uint64_t n);
BoundResult derivative_bound_deg12(std::uint64_t q, std::uint64_t n);
// Same rules restricted to one family; q is the family's constant field.
BoundResult tower_bound_simple(const TowerFamily& family, std::uint64_t n);
BoundResult derivative_bound_deg1(const TowerFamily& family, std::uint64_t n);
BoundResult derivative_bound_deg12(const TowerFamily& family, std::uint64_t n);

// Linear constant C_q from the first matching row of the case table, with the row name.
std::pair<Rational, std::string> cq_constant(std::uint64_t q);
BoundResult cq_bound(std::uint64_t q, std::uint64_t n);

// Closed-form slopes the derivative bounds stay under, for n at or above the family threshold.
Rational slope_cap_gs_t2(std::uint64_t p, unsigned r);  // base q^2, q = p^r >= 4
Rational slope_cap_gs_t3(std::uint64_t p, unsigned r);  // base q = p^r >= 4
Rational slope_cap_kummer_p2(std::uint64_t p);          // base p^2, p >= 5
Rational slope_cap_kummer_p(std::uint64_t p);           // base p, p >= 5

struct BoundOptions {
  unsigned composition_depth = 4;
  bool attach_witness = true;
  std::uint64_t witness_field_cap = 1ULL << 16;  // |F_{q^n}| limit for composed witnesses
};

// Aggregator with the composition memo. Thread-safe.
class BoundEngine {
 public:
  explicit BoundEngine(BoundOptions options = {}) : options_(options) {}

  BoundResult composition_bound(std::uint64_t q, std::uint64_t n, unsigned depth);
  BoundResult composition_bound(std::uint64_t q, std::uint64_t n) {
    return composition_bound(q, n, options_.composition_depth);
  }
  BoundResult best_upper_bound(std::uint64_t q, std::uint64_t n);

  const BoundOptions& options() const { return options_; }

 private:
  BoundResult best_upper_value(std::uint64_t q, std::uint64_t n, unsigned depth);
  std::shared_ptr<const BilinearDecomposition> build_witness(const FieldDescriptor& base, const BoundResult& r) const;

  BoundOptions options_;
  std::mutex mutex_;
  std::map<std::tuple<std::uint64_t, std::uint64_t, unsigned>, BoundResult> memo_;
};

BoundResult composition_bound(std::uint64_t q, std::uint64_t n, unsigned depth = 4);
BoundResult best_upper_bound(std::uint64_t q, std::uint64_t n);

struct BoundRow {
  std::uint64_t n = 0;
  BoundResult lower;
  BoundResult upper;
  Rational gap;  // upper / lower
};

struct BoundTable {
  std::uint64_t q = 0;
  std::vector<BoundRow> rows;
};

// Rows n = 1..n_max, computed across OpenMP workers and assembled in order.
BoundTable bound_table(std::uint64_t q, std::uint64_t n_max, BoundOptions options = {});
BoundTable bound_table_serial(std::uint64_t q, std::uint64_t n_max, BoundOptions options = {});
std::string table_to_csv(const BoundTable& t);
std::string table_to_json(const BoundTable& t);

}  // namespace bilmult
