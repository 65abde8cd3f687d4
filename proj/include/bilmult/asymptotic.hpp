// SPDX-License-Identifier: Apache-2.0
#pragma once

// Closed-form bounds on m_q = liminf mu_q(n)/n and M_q = limsup mu_q(n)/n, as exact
// rationals with their applicability on the given q.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bilmult/exact.hpp"
#include "bilmult/json_io.hpp"

namespace bilmult {

struct AsymptoticEntry {
  std::string quantity;  // "m_q" or "M_q"
  std::string relation;  // ">=" or "<="
  std::string rule;
  std::string citation;
  std::optional<Rational> value;  // absent when the rule does not apply
  bool applicable = false;
  bool conditional = false;  // rests on a user-supplied A(q)
  std::string note;
};

struct AsymptoticReport {
  std::uint64_t q = 0;
  std::optional<Rational> ihara;  // A(q) used, if any
  std::vector<AsymptoticEntry> entries;

  // Tightest applicable, unconditional value for quantity/relation.
  std::optional<Rational> best(const std::string& quantity, const std::string& relation) const;
  const AsymptoticEntry* find(const std::string& rule) const;
};

// A(q): sqrt(q) - 1 for squares (Drinfeld-Vladut attained), else the supplied value.
// Throws MissingAq for a non-square q without a supplied value.
Rational ihara_constant(std::uint64_t q, const std::optional<Rational>& supplied);

// Never throws MissingAq: the A(q) rule is then reported as conditional and not applied.
AsymptoticReport asymptotic_report(std::uint64_t q, const std::optional<Rational>& A_q = std::nullopt);

Json asymptotic_to_json(const AsymptoticReport& r);

// Parses "a", "a/b" or a decimal "x.y" into an exact rational; throws ParseError.
Rational parse_rational(const std::string& text);

}  // namespace bilmult
