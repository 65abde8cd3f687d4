// SPDX-License-Identifier: Apache-2.0
#include "bilmult/asymptotic.hpp"

#include <cctype>

#include "bilmult/error.hpp"

namespace bilmult {
namespace {

AsymptoticEntry entry(std::string quantity, std::string relation, std::string rule, std::string citation) {
  AsymptoticEntry e;
  e.quantity = std::move(quantity);
  e.relation = std::move(relation);
  e.rule = std::move(rule);
  e.citation = std::move(citation);
  return e;
}

void set_value(AsymptoticEntry& e, const Rational& v) {
  e.value = v;
  e.applicable = true;
}

}  // namespace

Rational ihara_constant(std::uint64_t q, const std::optional<Rational>& supplied) {
  if (is_perfect_square(BigInt(q))) return Rational(isqrt(BigInt(q))) - 1;
  if (!supplied) throw Error(ErrorCode::MissingAq, "A(q) is only known for square q; supply a lower bound");
  return *supplied;
}

AsymptoticReport asymptotic_report(std::uint64_t q, const std::optional<Rational>& A_q) {
  std::uint64_t p = 0;
  unsigned m = 0;
  if (q < 2 || !prime_power(q, p, m)) throw Error(ErrorCode::OutOfRange, "q must be a prime power");
  AsymptoticReport rep;
  rep.q = q;
  const Rational Q(q);
  const bool square = m % 2 == 0;
  const Rational root = square ? Rational(isqrt(BigInt(q))) : Rational(0);

  auto lower = entry("m_q", ">=", "m-lower", "Brockett-Brown-Dobkin (q = 2); Shparlinski-Tsfasman-Vladut (q > 2)");
  set_value(lower, q == 2 ? Rational(88, 25) : 2 * (1 + 1 / (Q - 1)));
  rep.entries.push_back(lower);

  auto ihara = entry("m_q", "<=", "m-upper-ihara", "m_q <= 2(1 + 1/(A(q) - 2)) for A(q) > 2");
  try {
    const Rational A = ihara_constant(q, A_q);
    rep.ihara = A;
    ihara.conditional = !square;
    if (!square) ihara.note = "conditional on the supplied A(q) = " + to_string(A);
    if (A > 2)
      set_value(ihara, 2 * (1 + 1 / (A - 2)));
    else
      ihara.note += (ihara.note.empty() ? "" : "; ") + std::string("needs A(q) > 2, have ") + to_string(A);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MissingAq) throw;
    ihara.conditional = true;
    ihara.note = "MissingAq: A(q) unknown for non-square q";
  }
  rep.entries.push_back(ihara);

  auto msq = entry("m_q", "<=", "m-upper-square", "m_{s^2} <= 2(1 + 1/(s - 3)) for s >= 4");
  if (square && root >= 4)
    set_value(msq, 2 * (1 + 1 / (root - 3)));
  else
    msq.note = "needs q = s^2 with s >= 4";
  rep.entries.push_back(msq);

  auto many = entry("m_q", "<=", "m-upper-any", "m_q <= 3(1 + 1/(q - 3)) for q > 3, via m_q <= m_{q^2} mu_q(2)/2");
  if (q > 3)
    set_value(many, 3 * (1 + 1 / (Q - 3)));
  else
    many.note = "needs q > 3";
  rep.entries.push_back(many);

  auto Msq = entry("M_q", "<=", "M-upper-square", "M_{s^2} <= 2(1 + 1/(s - 3)) for s >= 4");
  if (square && root >= 4)
    set_value(Msq, 2 * (1 + 1 / (root - 3)));
  else
    Msq.note = "needs q = s^2 with s >= 4";
  rep.entries.push_back(Msq);

  auto Modd = entry("M_q", "<=", "M-upper-odd-power", "M_q <= 3(1 + 2/(q - 3)) for q = p^m, m odd, q >= 5");
  if (m % 2 == 1 && q >= 5)
    set_value(Modd, 3 * (1 + 2 / (Q - 3)));
  else
    Modd.note = "needs an odd power q >= 5";
  rep.entries.push_back(Modd);

  auto M2 = entry("M_q", "<=", "M-upper-binary", "M_2 <= 27/2 via Shimura curves over F_4");
  if (q == 2)
    set_value(M2, Rational(27, 2));
  else
    M2.note = "q = 2 only";
  rep.entries.push_back(M2);
  return rep;
}

std::optional<Rational> AsymptoticReport::best(const std::string& quantity, const std::string& relation) const {
  std::optional<Rational> out;
  for (const auto& e : entries) {
    if (e.quantity != quantity || e.relation != relation || !e.applicable || e.conditional) continue;
    if (!out || (relation == "<=" ? *e.value < *out : *e.value > *out)) out = e.value;
  }
  return out;
}

const AsymptoticEntry* AsymptoticReport::find(const std::string& rule) const {
  for (const auto& e : entries)
    if (e.rule == rule) return &e;
  return nullptr;
}

Json asymptotic_to_json(const AsymptoticReport& r) {
  Json j = Json::object();
  j["q"] = r.q;
  j["A_q"] = r.ihara ? Json(to_string(*r.ihara)) : Json(nullptr);
  Json rows = Json::array();
  for (const auto& e : r.entries) {
    Json x = Json::object();
    x["quantity"] = e.quantity;
    x["relation"] = e.relation;
    x["rule"] = e.rule;
    x["value"] = e.value ? Json(to_string(*e.value)) : Json(nullptr);
    x["applicable"] = e.applicable;
    x["conditional"] = e.conditional;
    x["citation"] = e.citation;
    x["note"] = e.note;
    rows.push_back(std::move(x));
  }
  j["entries"] = std::move(rows);
  Json best = Json::object();
  for (const auto& [quantity, relation] : {std::pair{"m_q", ">="}, {"m_q", "<="}, {"M_q", "<="}}) {
    auto b = r.best(quantity, relation);
    best[std::string(quantity) + " " + relation] = b ? Json(to_string(*b)) : Json(nullptr);
  }
  j["best"] = std::move(best);
  return j;
}

Rational parse_rational(const std::string& text) {
  auto fail = [&] { return Error(ErrorCode::ParseError, "not a rational number: '" + text + "'"); };
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw fail();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw fail();
    for (std::size_t k = i; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw fail();
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    std::string whole = text.substr(0, dot);
    const bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    const BigInt scale = big_pow(10, frac.size());
    const BigInt f = frac.empty() ? BigInt(0) : parse_int(frac);
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) throw fail();
    const BigInt w = parse_int(whole);
    return Rational(w) + (neg ? -1 : 1) * Rational(f, scale);
  }
  return Rational(parse_int(text));
}

}  // namespace bilmult
