// SPDX-License-Identifier: Apache-2.0
#include "bilmult/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "bilmult/constructor.hpp"
#include "bilmult/error.hpp"

namespace bilmult {
namespace {

constexpr const char* kCiteLower = "Winograd-de Groote: mu >= 2n-1 with equality iff n <= q/2+1";
constexpr const char* kCiteShokrollahi = "Shokrollahi: mu = 2n for q/2+1 < n < (q+1+eps(q))/2";
constexpr const char* kCiteKnown = "known small values mu_2(4)=9, mu_4(4)=mu_5(4)=8";
constexpr const char* kCiteTower = "Chudnovsky-type interpolation on a certified tower step";
constexpr const char* kCiteDeriv1 = "interpolation with derivative evaluations at degree-one places";
constexpr const char* kCiteDeriv12 = "interpolation with derivative evaluations at degree-one and degree-two places";
constexpr const char* kCiteCompose = "mu_q(dm) <= mu_q(d) * mu_{q^d}(m)";
constexpr const char* kCiteLinear = "uniform linear constant C_q";
constexpr const char* kCiteAffine = "mu_2(n) <= (477/26)n + 45/2";

Json big_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return to_string(x);
}

BoundResult make_result(std::uint64_t q, std::uint64_t n, BoundKind kind, const BigInt& value, BoundMethod method,
                        const char* citation) {
  BoundResult r;
  r.q = q;
  r.n = n;
  r.kind = kind;
  r.value = value;
  r.method = method;
  r.citation = citation;
  return r;
}

void require_field(std::uint64_t q, std::uint64_t& p, unsigned& r) {
  if (q < 2 || !prime_power(q, p, r)) throw Error(ErrorCode::OutOfRange, "q must be a prime power");
}

void require_n(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "n must be positive");
}

// n <= q/2 + 1
bool in_interpolation_range(std::uint64_t q, std::uint64_t n) { return 2 * BigInt(n) <= BigInt(q) + 2; }

Json step_json(const TowerStep& st) {
  Json j = Json::object();
  j["family"] = tower_kind_name(st.family.kind);
  j["p"] = st.family.p;
  if (st.family.is_gs()) j["r"] = st.family.r;
  j["step"] = st.label();
  j["genus"] = big_json(st.bound_genus());
  j["genus_exact"] = st.genus_exact.has_value();
  j["places_lower"] = big_json(st.places_lower);
  if (st.kash) j["table_row"] = true;
  return j;
}

// Families whose counted places are degree one over F_q.
std::vector<TowerFamily> degree_one_families(std::uint64_t q) {
  std::uint64_t p = 0;
  unsigned r = 0;
  std::vector<TowerFamily> out;
  if (!prime_power(q, p, r) || r % 2 != 0) return out;
  if (big_pow(BigInt(p), r / 2) > 3) out.push_back(make_family(TowerKind::GS_T2, p, r / 2));
  if (r == 2 && p >= 5) out.push_back(make_family(TowerKind::Kummer_P2, p));
  return out;
}

// Families counting N1 + 2 N2 over F_q.
std::vector<TowerFamily> degree_two_families(std::uint64_t q) {
  std::uint64_t p = 0;
  unsigned r = 0;
  std::vector<TowerFamily> out;
  if (!prime_power(q, p, r)) return out;
  if (q > 3) out.push_back(make_family(TowerKind::GS_T3, p, r));
  if (r == 1 && p >= 5) out.push_back(make_family(TowerKind::Kummer_P, p));
  return out;
}

bool at_threshold(const TowerFamily& f, std::uint64_t n) { return BigInt(n) >= selection_threshold(f); }

// Visits steps with both interpolation conditions certified, in canonical order,
// until the visitor returns true.
template <class Visit>
void scan_certified_steps(const TowerFamily& f, std::uint64_t n, Visit&& visit) {
  const BigInt Q = f.constant_field();
  TowerStep st = first_step(f);
  for (; st.k <= 64; st = next_step(st)) {
    if (!non_special_certified(Q, st)) continue;
    if (!degree_n_place_certified(Q, n, st.bound_genus())) continue;
    if (visit(st)) return;
  }
}

struct Candidate {
  BigInt value;
  Json params;
};

void keep_best(std::optional<Candidate>& best, Candidate c) {
  if (!best || c.value < best->value) best = std::move(c);
}

}  // namespace

const char* method_name(BoundMethod method) {
  switch (method) {
    case BoundMethod::Exact: return "exact";
    case BoundMethod::Interpolation: return "interpolation";
    case BoundMethod::TowerSimple: return "tower-simple";
    case BoundMethod::DerivativeDeg1: return "derivative-deg1";
    case BoundMethod::DerivativeDeg12: return "derivative-deg12";
    case BoundMethod::Composition: return "composition";
    case BoundMethod::LinearConstant: return "linear-constant";
    case BoundMethod::AffineQ2: return "affine-q2";
    case BoundMethod::LowerRule: return "lower-rule";
    case BoundMethod::None: return "none";
  }
  return "?";
}

Json bound_to_json(const BoundResult& r) {
  Json j = Json::object();
  j["q"] = r.q;
  j["n"] = r.n;
  j["kind"] = r.kind == BoundKind::Lower ? "lower" : "upper";
  if (r.infinite)
    j["value"] = "inf";
  else
    j["value"] = big_json(r.value);
  j["method"] = method_name(r.method);
  j["citation"] = r.citation;
  j["parameters"] = r.parameters;
  j["witness_rank"] = r.witness ? Json(r.witness->rank()) : Json(nullptr);
  return j;
}

FieldDescriptor base_field(std::uint64_t q) {
  std::uint64_t p = 0;
  unsigned r = 0;
  require_field(q, p, r);
  const FieldDescriptor F = field_make_prime(p);
  return r == 1 ? F : field_extend(F, r);
}

BoundResult lower_bound(std::uint64_t q, std::uint64_t n) {
  std::uint64_t p = 0;
  unsigned r = 0;
  require_field(q, p, r);
  require_n(n);
  const BigInt v = in_interpolation_range(q, n) ? BigInt(2 * n - 1) : BigInt(2 * n);
  return make_result(q, n, BoundKind::Lower, v, BoundMethod::LowerRule, kCiteLower);
}

std::optional<BoundResult> exact_value(std::uint64_t q, std::uint64_t n) {
  std::uint64_t p = 0;
  unsigned r = 0;
  require_field(q, p, r);
  require_n(n);
  if (in_interpolation_range(q, n)) {
    BoundResult res = make_result(q, n, BoundKind::Upper, 2 * n - 1, BoundMethod::Exact, kCiteLower);
    res.parameters["rule"] = "interpolation";
    return res;
  }
  // q/2 + 1 < n < (q + 1 + eps(q)) / 2
  if (2 * BigInt(n) < BigInt(q) + 1 + epsilon(BigInt(q))) {
    BoundResult res = make_result(q, n, BoundKind::Upper, 2 * n, BoundMethod::Exact, kCiteShokrollahi);
    res.parameters["rule"] = "elliptic-range";
    res.parameters["epsilon"] = big_json(epsilon(BigInt(q)));
    return res;
  }
  static const std::map<std::pair<std::uint64_t, std::uint64_t>, unsigned> known{
      {{2, 4}, 9}, {{4, 4}, 8}, {{5, 4}, 8}};
  if (auto it = known.find({q, n}); it != known.end()) {
    BoundResult res = make_result(q, n, BoundKind::Upper, it->second, BoundMethod::Exact, kCiteKnown);
    res.parameters["rule"] = "known-value";
    return res;
  }
  return std::nullopt;
}

BoundResult best_lower_bound(std::uint64_t q, std::uint64_t n) {
  BoundResult lo = lower_bound(q, n);
  if (auto ex = exact_value(q, n); ex && ex->value > lo.value) {
    BoundResult r = *ex;
    r.kind = BoundKind::Lower;
    r.witness.reset();
    return r;
  }
  return lo;
}

BoundResult interpolation_bound(std::uint64_t q, std::uint64_t n) {
  std::uint64_t p = 0;
  unsigned r = 0;
  require_field(q, p, r);
  require_n(n);
  if (!in_interpolation_range(q, n)) throw Error(ErrorCode::NotApplicable, "interpolation needs n <= q/2 + 1");
  BoundResult res = make_result(q, n, BoundKind::Upper, 2 * n - 1, BoundMethod::Interpolation, kCiteLower);
  res.parameters["points"] = 2 * n - 2;
  return res;
}

namespace {

void tower_simple_family(const TowerFamily& f, std::uint64_t n, std::optional<Candidate>& best) {
  if (!at_threshold(f, n)) return;
  const BigInt N(n);
  const TowerStep st = select_step(f, n);
  const BigInt& g = st.bound_genus();
  if (!f.counts_degree_two() || (st.kash && st.kash->N1 >= 2 * N + 2 * g - 1)) {
    Json pr = step_json(st);
    pr["case"] = "degree-one";
    keep_best(best, {2 * N + g - 1, pr});
  }
  if (!f.counts_degree_two()) return;
  Json pr = step_json(st);
  pr["case"] = "non-special";
  keep_best(best, {3 * N + 3 * g, pr});
  if (st.places_lower >= 2 * N + 4 * g - 1) {
    Json p3 = step_json(st);
    p3["case"] = "large-support";
    keep_best(best, {3 * N + 6 * g, p3});
  }
}

void deriv1_family(const TowerFamily& f, std::uint64_t n, std::optional<Candidate>& best) {
  if (!at_threshold(f, n)) return;
  const BigInt N(n);
  scan_certified_steps(f, n, [&](const TowerStep& st) {
    const BigInt& g = st.bound_genus();
    const BigInt need = 2 * N + 2 * g - 1 - st.places_lower;
    const BigInt a = need > 0 ? need : BigInt(0);
    if (a <= st.places_lower) {
      Json pr = step_json(st);
      pr["a"] = big_json(a);
      keep_best(best, {2 * N + g - 1 + a, pr});
    }
    return a == 0;
  });
}

void deriv12_family(const TowerFamily& f, std::uint64_t n, std::optional<Candidate>& best) {
  if (!at_threshold(f, n)) return;
  const BigInt N(n);
  // A = evaluations still missing; a1 degree-one and a2 degree-two derivative evaluations.
  auto evaluate = [&](const TowerStep& st) {
    const BigInt& g = st.bound_genus();
    const BigInt need = 2 * N + 2 * g - 1 - st.places_lower;
    const BigInt A = need > 0 ? need : BigInt(0);
    if (A > st.places_lower) return A == 0;
    if (st.kash) {
      const BigInt a1 = std::min(A, st.kash->N1);
      const BigInt a2 = (A - a1 + 1) / 2;
      if (a2 <= st.kash->N2) {
        Json pr = step_json(st);
        pr["a1"] = big_json(a1);
        pr["a2"] = big_json(a2);
        pr["display"] = "2n+g+N2+a1+4a2";
        keep_best(best, {2 * N + g + st.kash->N2 + a1 + 4 * a2, pr});
        Json p2 = step_json(st);
        p2["a1"] = big_json(a1);
        p2["a2"] = big_json(a2);
        p2["display"] = "3n+3g/2+a1/2+3a2";
        keep_best(best, {floor_of(Rational(6 * N + 3 * g + a1 + 6 * a2, 2)), p2});
      }
    } else {
      // Without the N1/N2 split, a2 = min(N2, ceil(A/2)) and a1 = A - 2 a2 cost at most 3 ceil(A/2).
      const BigInt a2 = (A + 1) / 2;
      Json pr = step_json(st);
      pr["a1+2a2"] = big_json(A);
      pr["display"] = "3n+3g/2+a1/2+3a2";
      keep_best(best, {3 * N + (3 * g) / 2 + 3 * a2, pr});
    }
    return A == 0;
  };
  if (f.kind == TowerKind::GS_T3 && n <= 12) {
    if (const KashRecord* row = kash_lookup(static_cast<std::uint64_t>(f.q())); row && n >= row->n_min) {
      const TowerStep st = kash_step(*row, f);
      if (degree_n_place_certified(f.constant_field(), n, st.bound_genus())) evaluate(st);
    }
  }
  scan_certified_steps(f, n, evaluate);
}

using FamilyRule = void (*)(const TowerFamily&, std::uint64_t, std::optional<Candidate>&);

BoundResult finish_rule(std::uint64_t q, std::uint64_t n, std::optional<Candidate>& best, BoundMethod method,
                        const char* citation) {
  if (!best) throw Error(ErrorCode::NotApplicable, "no tower family applies to this (q, n)");
  BoundResult res = make_result(q, n, BoundKind::Upper, best->value, method, citation);
  res.parameters = best->params;
  return res;
}

BoundResult run_families(std::uint64_t q, std::uint64_t n, const std::vector<TowerFamily>& families, FamilyRule rule,
                         BoundMethod method, const char* citation) {
  require_n(n);
  std::optional<Candidate> best;
  for (const TowerFamily& f : families) rule(f, n, best);
  return finish_rule(q, n, best, method, citation);
}

std::uint64_t family_field(const TowerFamily& f) {
  const BigInt Q = f.constant_field();
  if (Q > (BigInt(1) << 62)) throw Error(ErrorCode::ParameterTooLarge, "constant field too large");
  return static_cast<std::uint64_t>(Q);
}

}  // namespace

BoundResult tower_bound_simple(std::uint64_t q, std::uint64_t n) {
  std::vector<TowerFamily> fams = degree_one_families(q);
  for (const auto& f : degree_two_families(q)) fams.push_back(f);
  return run_families(q, n, fams, &tower_simple_family, BoundMethod::TowerSimple, kCiteTower);
}

BoundResult tower_bound_simple(const TowerFamily& family, std::uint64_t n) {
  return run_families(family_field(family), n, {family}, &tower_simple_family, BoundMethod::TowerSimple, kCiteTower);
}

BoundResult derivative_bound_deg1(std::uint64_t q, std::uint64_t n) {
  return run_families(q, n, degree_one_families(q), &deriv1_family, BoundMethod::DerivativeDeg1, kCiteDeriv1);
}

BoundResult derivative_bound_deg1(const TowerFamily& family, std::uint64_t n) {
  if (family.counts_degree_two()) throw Error(ErrorCode::NotApplicable, "family counts degree-two places");
  return run_families(family_field(family), n, {family}, &deriv1_family, BoundMethod::DerivativeDeg1, kCiteDeriv1);
}

BoundResult derivative_bound_deg12(std::uint64_t q, std::uint64_t n) {
  return run_families(q, n, degree_two_families(q), &deriv12_family, BoundMethod::DerivativeDeg12, kCiteDeriv12);
}

BoundResult derivative_bound_deg12(const TowerFamily& family, std::uint64_t n) {
  if (!family.counts_degree_two()) throw Error(ErrorCode::NotApplicable, "family counts degree-one places only");
  return run_families(family_field(family), n, {family}, &deriv12_family, BoundMethod::DerivativeDeg12, kCiteDeriv12);
}

std::pair<Rational, std::string> cq_constant(std::uint64_t q) {
  std::uint64_t p = 0;
  unsigned r = 0;
  require_field(q, p, r);
  const Rational Q(q), P(p);
  if (q == 2) return {Rational(22), "q=2"};
  if (q == 3) return {Rational(27), "q=3"};
  if (r == 1) return {3 * (1 + Rational(4) / (Q - 3)), "q=p>=5"};
  if (r == 2 && q >= 25) return {2 * (1 + Rational(2) / (P - 3)), "q=p^2>=25"};
  if (r % 2 == 0 && q >= 16) {
    // Row stated for the square root s = p^{r/2} of the base.
    const Rational s(big_pow(BigInt(p), r / 2));
    return {2 * (1 + P / (s - 3 + (P - 1) * (1 - 1 / (s + 1)))), "q=p^2k>=16"};
  }
  return {6 * (1 + P / (Q - 3)), "q>=4"};
}

BoundResult cq_bound(std::uint64_t q, std::uint64_t n) {
  require_n(n);
  auto [C, row] = cq_constant(q);
  BoundResult res = make_result(q, n, BoundKind::Upper, floor_of(C * n), BoundMethod::LinearConstant, kCiteLinear);
  res.parameters["C_q"] = to_string(C);
  res.parameters["row"] = row;
  if (q == 2) {
    const BigInt affine = floor_of(Rational(477, 26) * n + Rational(45, 2));
    if (affine < res.value) {
      res = make_result(q, n, BoundKind::Upper, affine, BoundMethod::AffineQ2, kCiteAffine);
      res.parameters["slope"] = "477/26";
      res.parameters["offset"] = "45/2";
    }
  }
  return res;
}

Rational slope_cap_gs_t2(std::uint64_t p, unsigned r) {
  const Rational P(p), Q(big_pow(BigInt(p), r));
  return 2 * (1 + P / (Q - 3 + (P - 1) * (1 - 1 / (Q + 1))));
}

Rational slope_cap_gs_t3(std::uint64_t p, unsigned r) { return slope_cap_gs_t2(p, r) * Rational(3, 2); }

Rational slope_cap_kummer_p2(std::uint64_t p) { return 2 * (1 + 2 / (Rational(p) - Rational(33, 16))); }

Rational slope_cap_kummer_p(std::uint64_t p) { return 3 * (1 + 2 / (Rational(p) - Rational(33, 16))); }

BoundResult BoundEngine::composition_bound(std::uint64_t q, std::uint64_t n, unsigned depth) {
  std::uint64_t p = 0;
  unsigned r = 0;
  require_field(q, p, r);
  require_n(n);
  BoundResult best = make_result(q, n, BoundKind::Upper, 0, BoundMethod::Composition, kCiteCompose);
  best.infinite = true;
  if (depth == 0) return best;
  for (std::uint64_t d = 2; d < n; ++d) {
    if (n % d != 0) continue;
    const BigInt qd = big_pow(BigInt(q), d);
    if (qd > (BigInt(1) << 62)) continue;
    const std::uint64_t m = n / d;
    BoundResult inner = best_upper_value(q, d, depth - 1);
    BoundResult outer = best_upper_value(static_cast<std::uint64_t>(qd), m, depth - 1);
    if (inner.infinite || outer.infinite) continue;
    const BigInt v = inner.value * outer.value;
    if (best.infinite || v < best.value) {
      best.infinite = false;
      best.value = v;
      best.parameters = Json::object();
      best.parameters["d"] = d;
      best.parameters["m"] = m;
      best.parameters["inner"] = big_json(inner.value);
      best.parameters["outer"] = big_json(outer.value);
      best.parts = {std::make_shared<const BoundResult>(std::move(inner)),
                    std::make_shared<const BoundResult>(std::move(outer))};
    }
  }
  return best;
}

BoundResult BoundEngine::best_upper_value(std::uint64_t q, std::uint64_t n, unsigned depth) {
  const auto key = std::make_tuple(q, n, depth);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  std::vector<BoundResult> cands;
  const std::optional<BoundResult> exact = exact_value(q, n);
  if (exact) cands.push_back(*exact);
  if (in_interpolation_range(q, n)) cands.push_back(interpolation_bound(q, n));
  using QRule = BoundResult (*)(std::uint64_t, std::uint64_t);
  for (QRule rule : {static_cast<QRule>(&tower_bound_simple), static_cast<QRule>(&derivative_bound_deg1),
                     static_cast<QRule>(&derivative_bound_deg12)}) {
    try {
      cands.push_back(rule(q, n));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotApplicable && e.code() != ErrorCode::OutOfRange &&
          e.code() != ErrorCode::UnsupportedBase)
        throw;
    }
  }
  BoundResult comp = composition_bound(q, n, depth);
  if (!comp.infinite) cands.push_back(comp);
  cands.push_back(cq_bound(q, n));

  auto better = [](const BoundResult& a, const BoundResult& b) {
    if (a.value != b.value) return a.value < b.value;
    return static_cast<int>(a.method) < static_cast<int>(b.method);
  };
  BoundResult best = *std::min_element(cands.begin(), cands.end(), better);
  if (exact && best.value < exact->value)
    throw Error(ErrorCode::ValidationError, "a rule undercuts a known exact value");
  // An exact value met by a composition keeps that composition as its construction.
  if (best.method == BoundMethod::Exact && !in_interpolation_range(q, n) && !comp.infinite &&
      comp.value == best.value)
    best.parts = {std::make_shared<const BoundResult>(comp)};

  std::lock_guard<std::mutex> lock(mutex_);
  memo_.insert_or_assign(key, best);
  return best;
}

std::shared_ptr<const BilinearDecomposition> BoundEngine::build_witness(const FieldDescriptor& base,
                                                                        const BoundResult& r) const {
  const BigInt size = big_pow(base.cardinality(), r.n);
  std::shared_ptr<const BilinearDecomposition> out;
  const bool interp = r.method == BoundMethod::Interpolation ||
                      (r.method == BoundMethod::Exact && r.parameters.value("rule", "") == "interpolation");
  if (interp) {
    if (base.dimension() * r.n > kMaxDimension) return nullptr;
    out = std::make_shared<const BilinearDecomposition>(toom_construct(base, r.n));
  } else if (r.method == BoundMethod::Exact && r.parts.size() == 1) {
    return build_witness(base, *r.parts.front());
  } else if (r.method == BoundMethod::Composition && r.parts.size() == 2) {
    if (size > options_.witness_field_cap) return nullptr;
    const std::uint64_t d = r.parameters.at("d").get<std::uint64_t>();
    auto inner = build_witness(base, *r.parts[0]);
    if (!inner) return nullptr;
    auto outer = build_witness(inner->extension(), *r.parts[1]);
    if (!outer) return nullptr;
    if (inner->n() != d) return nullptr;
    out = std::make_shared<const BilinearDecomposition>(compose_decompositions(*outer, *inner));
  } else {
    return nullptr;
  }
  if (BigInt(out->rank()) != r.value || !verify_decomposition(*out))
    throw Error(ErrorCode::ValidationError, "constructed witness does not match its bound");
  return out;
}

BoundResult BoundEngine::best_upper_bound(std::uint64_t q, std::uint64_t n) {
  BoundResult best = best_upper_value(q, n, options_.composition_depth);
  if (options_.attach_witness) best.witness = build_witness(base_field(q), best);
  return best;
}

BoundResult composition_bound(std::uint64_t q, std::uint64_t n, unsigned depth) {
  BoundEngine engine(BoundOptions{depth, false});
  BoundResult r = engine.composition_bound(q, n, depth);
  return r;
}

BoundResult best_upper_bound(std::uint64_t q, std::uint64_t n) {
  static BoundEngine engine;
  return engine.best_upper_bound(q, n);
}

namespace {

BoundRow make_row(BoundEngine& engine, std::uint64_t q, std::uint64_t n) {
  BoundRow row;
  row.n = n;
  row.lower = best_lower_bound(q, n);
  row.upper = engine.best_upper_bound(q, n);
  row.gap = Rational(row.upper.value, row.lower.value);
  return row;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

BoundTable bound_table(std::uint64_t q, std::uint64_t n_max, BoundOptions options) {
  BoundEngine engine(options);
  BoundTable t;
  t.q = q;
  t.rows.resize(n_max);
  const std::int64_t count = static_cast<std::int64_t>(n_max);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      t.rows[i] = make_row(engine, q, static_cast<std::uint64_t>(i) + 1);
    } catch (...) {
#pragma omp critical(bilmult_table_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return t;
}

BoundTable bound_table_serial(std::uint64_t q, std::uint64_t n_max, BoundOptions options) {
  BoundEngine engine(options);
  BoundTable t;
  t.q = q;
  for (std::uint64_t n = 1; n <= n_max; ++n) t.rows.push_back(make_row(engine, q, n));
  return t;
}

std::string table_to_csv(const BoundTable& t) {
  std::ostringstream os;
  os << "n,lower,upper,method,citation\n";
  for (const auto& row : t.rows) {
    os << row.n << ',' << to_string(row.lower.value) << ',' << to_string(row.upper.value) << ','
       << method_name(row.upper.method) << ',' << csv_field(row.upper.citation) << '\n';
  }
  return os.str();
}

std::string table_to_json(const BoundTable& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json j = Json::object();
    j["n"] = row.n;
    j["lower"] = big_json(row.lower.value);
    j["upper"] = big_json(row.upper.value);
    j["lower_method"] = method_name(row.lower.method);
    j["method"] = method_name(row.upper.method);
    j["citation"] = row.upper.citation;
    j["gap"] = to_string(row.gap);
    j["parameters"] = row.upper.parameters;
    j["witness_rank"] = row.upper.witness ? Json(row.upper.witness->rank()) : Json(nullptr);
    rows.push_back(std::move(j));
  }
  Json out = Json::object();
  out["q"] = t.q;
  out["rows"] = std::move(rows);
  return out.dump(2) + "\n";
}

}  // namespace bilmult
