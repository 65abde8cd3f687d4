// SPDX-License-Identifier: Apache-2.0
// Acceptance binary: one PASS/FAIL line per criterion. A criterion that exceeds its
// runtime limit fails. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bilmult/asymptotic.hpp"
#include "bilmult/bounds.hpp"
#include "bilmult/constructor.hpp"
#include "bilmult/decomposition.hpp"
#include "bilmult/error.hpp"
#include "bilmult/rank_search.hpp"
#include "bilmult/towers.hpp"

using namespace bilmult;

namespace {

// Collects the first few mismatches of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (failed_ <= 3) detail_ << (failed_ > 1 ? "; " : "") << what;
  }
  bool ok() const { return failed_ == 0 && total_ > 0; }
  std::string summary() const {
    std::ostringstream os;
    os << total_ << " checks";
    if (failed_) os << ", " << failed_ << " failed: " << detail_.str();
    return os.str();
  }

 private:
  std::size_t total_ = 0;
  std::size_t failed_ = 0;
  std::ostringstream detail_;
};

struct Criterion {
  int id;
  const char* name;
  const char* tolerance;
  double limit_s;
  std::function<void(Check&)> body;
};

std::string s(const BigInt& x) { return to_string(x); }

void exact_values(Check& c) {
  BoundEngine engine;
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    const BigInt up = engine.best_upper_bound(q, 2).value, lo = lower_bound(q, 2).value;
    c.expect(up == 3 && lo == 3, "mu_" + std::to_string(q) + "(2): [" + s(lo) + "," + s(up) + "]");
  }
  // n = 4: the lower side is the exact-table lookup.
  for (auto [q, v] : std::vector<std::pair<std::uint64_t, int>>{{2, 9}, {4, 8}, {5, 8}}) {
    const BigInt up = engine.best_upper_bound(q, 4).value, lo = best_lower_bound(q, 4).value;
    c.expect(up == v && lo == v, "mu_" + std::to_string(q) + "(4): [" + s(lo) + "," + s(up) + "]");
  }
}

void constructive_toom(Check& c) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    const FieldDescriptor F = base_field(q);
    for (std::size_t n = 1; 2 * n <= q + 2; ++n) {
      const BilinearDecomposition d = toom_construct(F, n);
      const std::string tag = "q=" + std::to_string(q) + " n=" + std::to_string(n);
      c.expect(d.rank() == 2 * n - 1, tag + " rank " + std::to_string(d.rank()));
      c.expect(verify_decomposition(d), tag + " fails verification");
    }
  }
}

void rank_oracle(Check& c) {
  for (std::uint64_t p : {2, 3}) {
    const FieldDescriptor F = field_make_prime(p);
    const RankSearchReport found = brute_force_rank(F, 2, 3);
    c.expect(found.outcome == SearchOutcome::Found && found.rank == 3,
             "F_" + std::to_string(p) + " r_max=3: " + outcome_name(found.outcome) + " at " + std::to_string(found.rank));
    c.expect(found.decomposition && verify_decomposition(*found.decomposition), "F_" + std::to_string(p) + " witness");
    const RankSearchReport none = brute_force_rank(F, 2, 2);
    c.expect(none.outcome == SearchOutcome::ExhaustedNoneExists,
             "F_" + std::to_string(p) + " r_max=2: " + outcome_name(none.outcome));
  }
}

void composition(Check& c) {
  const FieldDescriptor F2 = field_make_prime(2), F4 = field_extend(F2, 2);
  const BilinearDecomposition d = compose_decompositions(toom_construct(F4, 3), toom_construct(F2, 2));
  c.expect(d.rank() == 15, "rank " + std::to_string(d.rank()));
  c.expect(d.extension() == field_extend(F2, 6), "extension is not F_{2^6}");
  c.expect(verify_decomposition(d), "basis verification");
  const ExhaustiveReport ex = exhaustive_check(d);
  c.expect(ex.pairs_checked == 4096 && ex.mismatches == 0,
           std::to_string(ex.mismatches) + " mismatches in " + std::to_string(ex.pairs_checked) + " pairs");
}

void tower_formulas(Check& c) {
  c.expect(gs_genus(4, 2) == 6, "gs_genus(4,2) = " + s(gs_genus(4, 2)));
  c.expect(kummer_genus(2) == 3, "kummer_genus(2) = " + s(kummer_genus(2)));
  std::vector<TowerFamily> fams;
  for (std::uint64_t q : {4, 5, 8, 9, 16, 25}) {
    std::uint64_t p = 0;
    unsigned r = 0;
    prime_power(q, p, r);
    fams.push_back(make_family(TowerKind::GS_T2, p, r));
    fams.push_back(make_family(TowerKind::GS_T3, p, r));
  }
  for (std::uint64_t p : {5, 7, 11, 13}) {
    fams.push_back(make_family(TowerKind::Kummer_P2, p));
    fams.push_back(make_family(TowerKind::Kummer_P, p));
  }
  for (const auto& f : fams) {
    const LemmaReport rep = check_lemma_inequalities(f, 10);
    for (const auto& chk : rep.checks)
      c.expect(chk.status != CheckStatus::Fail, std::string(tower_kind_name(f.kind)) + " p=" + std::to_string(f.p) +
                                                   " r=" + std::to_string(f.r) + " " + chk.name + " k=" +
                                                   std::to_string(chk.k) + " " + chk.detail);
  }
}

void kash_consistency(Check& c) {
  const std::vector<std::pair<std::uint64_t, int>> expected = {{5, 53}, {7, 151}, {11, 611}, {13, 1021},
                                                               {4, 15}, {8, 117}, {9, 113}};
  c.expect(kash_table().size() == expected.size(), "table has " + std::to_string(kash_table().size()) + " rows");
  for (const auto& [q, gamma] : expected) {
    const KashRecord* row = kash_lookup(q);
    if (!row) {
      c.expect(false, "no row for q=" + std::to_string(q));
      continue;
    }
    const BigInt g = floor_of(Rational(row->N1 + 2 * row->N2 - 2 * row->genus + 1, 2));
    c.expect(g == gamma, "q=" + std::to_string(q) + " recomputed " + s(g));
    c.expect(floor_of(row->gamma_printed) == g, "q=" + std::to_string(q) + " printed " + to_string(row->gamma_printed));
    c.expect(kash_gamma(*row) == g, "q=" + std::to_string(q) + " kash_gamma " + s(kash_gamma(*row)));
  }
}

void slope_caps(Check& c) {
  // (i) at q = 4, base 16.
  const Rational cap_i = slope_cap_gs_t2(2, 2);
  c.expect(cap_i == Rational(38, 9), "cap (i) = " + to_string(cap_i));
  for (std::uint64_t n = 18; n <= 10000; ++n) {
    const BigInt v = derivative_bound_deg1(16, n).value;
    c.expect(v <= ceil_of(cap_i * n), "(i) n=" + std::to_string(n) + " value " + s(v));
  }
  auto sweep = [&](const char* tag, const TowerFamily& f, const Rational& cap, bool deg1) {
    const std::uint64_t n0 = static_cast<std::uint64_t>(selection_threshold(f));
    for (std::uint64_t n = n0; n <= 3000; ++n) {
      const BigInt v = deg1 ? derivative_bound_deg1(f, n).value : derivative_bound_deg12(f, n).value;
      c.expect(v <= ceil_of(cap * n), std::string(tag) + " p=" + std::to_string(f.p) + " r=" + std::to_string(f.r) +
                                          " n=" + std::to_string(n) + " value " + s(v));
    }
  };
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {13, 1}, {2, 4}, {5, 2}}) {
    sweep("(i)", make_family(TowerKind::GS_T2, p, r), slope_cap_gs_t2(p, r), true);
    sweep("(ii)", make_family(TowerKind::GS_T3, p, r), slope_cap_gs_t3(p, r), false);
  }
  for (std::uint64_t p : {5, 7, 11, 13}) {
    sweep("(iii)", make_family(TowerKind::Kummer_P2, p), slope_cap_kummer_p2(p), true);
    sweep("(iv)", make_family(TowerKind::Kummer_P, p), slope_cap_kummer_p(p), false);
  }
}

void soundness(Check& c) {
  BoundEngine engine;
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 13, 16, 25}) {
    const Rational C = cq_constant(q).first;
    for (std::uint64_t n = 1; n <= 40; ++n) {
      const std::string tag = "q=" + std::to_string(q) + " n=" + std::to_string(n);
      const BoundResult lo = best_lower_bound(q, n);
      const BoundResult up = engine.best_upper_bound(q, n);
      c.expect(!up.infinite, tag + " no upper bound");
      c.expect(lo.value <= up.value, tag + " lower " + s(lo.value) + " > upper " + s(up.value));
      c.expect(Rational(up.value) <= C * n, tag + " upper " + s(up.value) + " above C_q n");
      if (up.witness) {
        c.expect(BigInt(up.witness->rank()) == up.value, tag + " witness rank");
        c.expect(verify_decomposition(*up.witness), tag + " witness fails verification");
      }
    }
  }
}

void asymptotic_values(Check& c) {
  auto expect_best = [&](std::uint64_t q, const char* quantity, const char* rel, const Rational& v) {
    const auto b = asymptotic_report(q).best(quantity, rel);
    c.expect(b && *b == v, std::string(quantity) + " " + rel + " at q=" + std::to_string(q) + ": " +
                               (b ? to_string(*b) : std::string("none")));
  };
  expect_best(2, "m_q", ">=", Rational(88, 25));
  expect_best(2, "M_q", "<=", Rational(27, 2));
  expect_best(25, "M_q", "<=", Rational(3));
  expect_best(25, "m_q", "<=", Rational(3));
  expect_best(5, "m_q", "<=", Rational(9, 2));
  const AsymptoticReport two = asymptotic_report(2), five = asymptotic_report(5), sq = asymptotic_report(25);
  c.expect(two.find("M-upper-binary")->applicable && !two.find("m-upper-any")->applicable, "q=2 flags");
  c.expect(five.find("m-upper-any")->applicable && !five.find("m-upper-square")->applicable &&
               five.find("m-upper-ihara")->conditional,
           "q=5 flags");
  c.expect(sq.find("M-upper-square")->applicable && !sq.find("M-upper-odd-power")->applicable &&
               !sq.find("m-upper-ihara")->conditional,
           "q=25 flags");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact-value reproduction", "exact equality", 1, exact_values},
      {2, "constructive interpolation", "rank exactly 2n-1, basis verification", 10, constructive_toom},
      {3, "brute-force rank oracle", "Found at 3, none at 2", 60, rank_oracle},
      {4, "composition", "rank 15, 0 of 4096 mismatches", 30, composition},
      {5, "tower formulas", "exact integers, 0 failed checks", 5, tower_formulas},
      {6, "table consistency", "exact equality after flooring", 1, kash_consistency},
      {7, "slope caps", "exact rational comparison", 30, slope_caps},
      {8, "global soundness", "lower <= upper <= C_q n, witnesses verify", 120, soundness},
      {9, "asymptotic report", "exact rationals and flags", 1, asymptotic_values},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt < cr.limit_s;
    const bool pass = c.ok() && in_time;
    failed += pass ? 0 : 1;
    std::printf("criterion %d %-28s %s  [%s] %.3f s (limit %.0f s%s) %s\n", cr.id, cr.name, pass ? "PASS" : "FAIL",
                cr.tolerance, dt, cr.limit_s, in_time ? "" : ", exceeded", c.summary().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
