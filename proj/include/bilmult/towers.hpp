// SPDX-License-Identifier: Apache-2.0
#pragma once

// Symbolic data for the Garcia-Stichtenoth towers (Artin-Schreier, over F_{q^2} and
// its descent to F_q) and the Kummer tower y^2 = (x^2+1)/(2x) (over F_{p^2} and F_p).
// Nothing here builds a function field: steps carry exact genera where a closed
// formula exists and otherwise guaranteed genus and place-count bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bilmult/exact.hpp"

namespace bilmult {

enum class TowerKind {
  GS_T2,      // Artin-Schreier tower over F_{q^2}; places counted are degree one
  GS_T3,      // its descent to F_q; places counted are N1 + 2 N2
  Kummer_P2,  // Kummer tower over F_{p^2}
  Kummer_P,   // Kummer tower over F_p; places counted are N1 + 2 N2
};

const char* tower_kind_name(TowerKind kind);

struct TowerFamily {
  TowerKind kind = TowerKind::GS_T2;
  std::uint64_t p = 0;
  unsigned r = 1;  // q = p^r; 1 for the Kummer kinds

  bool is_gs() const { return kind == TowerKind::GS_T2 || kind == TowerKind::GS_T3; }
  BigInt q() const { return big_pow(BigInt(p), r); }
  // Size of the constant field of the tower.
  BigInt constant_field() const;
  // Whether the counted places include degree-two places (N1 + 2 N2).
  bool counts_degree_two() const { return kind == TowerKind::GS_T3 || kind == TowerKind::Kummer_P; }
};

// GS kinds need q = p^r > 3, Kummer kinds an odd prime p. Throws UnsupportedBase.
TowerFamily make_family(TowerKind kind, std::uint64_t p, unsigned r = 1);

// One row of the embedded small-field table for the descended GS tower.
struct KashRecord {
  std::uint64_t q = 0;
  std::uint64_t p = 0;
  unsigned r = 0;
  unsigned k = 0;
  unsigned s = 0;
  unsigned epsilon = 0;
  unsigned n_min = 0;  // first degree the row serves; the row serves n_min..12
  BigInt N1;
  BigInt N2;
  Rational gamma_printed;  // as printed, e.g. 303/2
  BigInt genus;
  BigInt two_g_plus_one;          // 2g + 1 as embedded
  BigInt two_g_plus_one_printed;  // as printed in the source table
  BigInt place_threshold;         // printed lower value of q^{(n_min-1)/2}(sqrt(q) - 1)
};

const std::vector<KashRecord>& kash_table();
const KashRecord* kash_lookup(std::uint64_t q);
// floor((N1 + 2 N2 - 2g + 1) / 2)
BigInt kash_gamma(const KashRecord& row);

struct TowerStep {
  TowerFamily family;
  unsigned k = 0;
  std::optional<unsigned> s;  // GS kinds only
  std::optional<BigInt> genus_exact;
  BigInt genus_lower;   // guaranteed
  BigInt genus_upper;   // guaranteed
  BigInt places_lower;  // guaranteed lower bound on the counted places
  std::optional<KashRecord> kash;

  // Genus used in bound formulas: exact when known, otherwise the upper bound.
  const BigInt& bound_genus() const { return genus_exact ? *genus_exact : genus_upper; }
  std::string label() const;  // "(k,s)" or "k"
};

// Genus of the k-th Artin-Schreier step; q must be a prime power > 3.
BigInt gs_genus(std::uint64_t q, unsigned k);
TowerStep gs_step_bounds(const TowerFamily& family, unsigned k, unsigned s);
TowerStep gs_step_bounds(std::uint64_t q, unsigned k, unsigned s);

BigInt kummer_genus(unsigned k);
BigInt kummer_places_lower(std::uint64_t p, unsigned k);
TowerStep kummer_step(const TowerFamily& family, unsigned k);

// Step with the table data substituted (exact genus, exact N1 + 2 N2).
TowerStep kash_step(const KashRecord& row, const TowerFamily& family);

enum class CheckStatus { Pass, Fail, Skipped };

struct LemmaCheck {
  std::string name;
  unsigned k = 0;
  std::optional<unsigned> s;
  CheckStatus status = CheckStatus::Skipped;
  std::string detail;
};

struct LemmaReport {
  TowerFamily family;
  unsigned k_max = 0;
  std::vector<LemmaCheck> checks;
  std::size_t count(CheckStatus status) const;
};

// Evaluates the genus and place inequalities at every step up to k_max (<= 64).
LemmaReport check_lemma_inequalities(const TowerFamily& family, unsigned k_max);

// Smallest n the step-existence argument covers for the family.
BigInt selection_threshold(const TowerFamily& family);

// Condition that a place of degree n exists: 2g + 1 <= Q^{(n-1)/2} (sqrt(Q) - 1),
// Q the constant field size.
bool degree_n_place_certified(const BigInt& Q, std::uint64_t n, const BigInt& genus);
// Non-special divisor of degree g - 1: exact genus 0, any genus once Q >= 5, or
// genus >= 2 with Q = 4.
bool non_special_certified(const BigInt& Q, const TowerStep& step);

// First step in canonical order (k, then s) with places_lower >= 2n + 2 bound_genus - 1
// with genus_lower >= 2 (the non-special-divisor criterion); the place-existence condition is
// then re-checked. Descended-GS degrees 5..12 use the embedded table row instead.
// Throws OutOfRange below the threshold.
TowerStep select_step(const TowerFamily& family, std::uint64_t n);

// Canonical successor of a step (GS steps skip s = r, which equals (k+1, 0)).
TowerStep next_step(const TowerStep& step);
TowerStep first_step(const TowerFamily& family);

}  // namespace bilmult
