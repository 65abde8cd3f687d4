// SPDX-License-Identifier: Apache-2.0
#include "bilmult/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bilmult/asymptotic.hpp"
#include "bilmult/bounds.hpp"
#include "bilmult/constructor.hpp"
#include "bilmult/decomposition.hpp"
#include "bilmult/error.hpp"
#include "bilmult/json_io.hpp"
#include "bilmult/rank_search.hpp"
#include "bilmult/towers.hpp"

namespace bilmult {
namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ValidationError, "cannot write " + path);
  f << text;
}

std::uint64_t budget_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("BILMULT_BUDGET");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || env[0] == '-') throw UsageError("BILMULT_BUDGET must be a non-negative integer");
  return v;
}

std::string bound_line(const char* label, const BoundResult& r) {
  std::ostringstream os;
  os << label << ' ' << (r.infinite ? std::string("inf") : to_string(r.value)) << ' ' << method_name(r.method) << ": "
     << r.citation;
  if (!r.parameters.empty()) os << ' ' << r.parameters.dump();
  os << '\n';
  return os.str();
}

TowerKind parse_family(const std::string& s) {
  if (s == "gs-t2") return TowerKind::GS_T2;
  if (s == "gs-t3") return TowerKind::GS_T3;
  if (s == "kummer-p2") return TowerKind::Kummer_P2;
  if (s == "kummer-p") return TowerKind::Kummer_P;
  throw UsageError("unknown family " + s);
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

std::string opt_big(const std::optional<BigInt>& x) { return x ? to_string(*x) : std::string(); }

std::vector<TowerStep> tower_rows(const TowerFamily& f, unsigned k_max) {
  std::vector<TowerStep> rows;
  if (f.is_gs()) {
    for (unsigned k = 1; k <= k_max; ++k)
      for (unsigned s = 0; s < f.r; ++s) rows.push_back(gs_step_bounds(f, k, s));
  } else {
    for (unsigned k = 0; k <= k_max; ++k) rows.push_back(kummer_step(f, k));
  }
  if (f.kind == TowerKind::GS_T3) {
    if (const KashRecord* row = kash_lookup(static_cast<std::uint64_t>(f.q()))) {
      for (auto& st : rows)
        if (st.k == row->k && st.s == row->s) st.kash = *row;
    }
  }
  return rows;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bilinear multiplication workbench for F_{q^n}/F_q"};
  app.require_subcommand(1);
  std::string format;
  std::string output;

  // bound
  std::uint64_t q = 0, n = 0;
  unsigned depth = 4;
  bool no_witness = false;
  auto* bound = app.add_subcommand("bound", "Best lower and upper bound on mu_q(n)");
  bound->add_option("--q", q, "Base field size (prime power)")->required();
  bound->add_option("--n", n, "Extension degree")->required()->check(CLI::PositiveNumber);
  bound->add_option("--depth", depth, "Composition depth")->check(CLI::Range(0, 8));
  bound->add_flag("--no-witness", no_witness, "Skip building a witness decomposition");
  bound->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  // table
  std::uint64_t n_max = 0;
  bool serial = false;
  auto* table = app.add_subcommand("table", "Bound table for n = 1..n_max");
  table->add_option("--q", q, "Base field size (prime power)")->required();
  table->add_option("--n-max", n_max, "Largest extension degree")->required()->check(CLI::Range(1, 100000));
  table->add_option("--depth", depth, "Composition depth")->check(CLI::Range(0, 8));
  table->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--output", output, "Output path");
  table->add_flag("--serial", serial, "Compute rows on one thread");
  table->add_flag("--no-witness", no_witness, "Skip building witness decompositions");

  // construct
  auto* construct = app.add_subcommand("construct", "Rank-(2n-1) interpolation decomposition as JSON");
  construct->add_option("--q", q, "Base field size (prime power)")->required();
  construct->add_option("--n", n, "Extension degree")->required()->check(CLI::PositiveNumber);
  construct->add_option("--output", output, "Output path");

  // compose
  std::vector<std::string> files;
  bool keep_tower = false;
  auto* compose = app.add_subcommand("compose", "Compose two decompositions (either order)");
  compose->add_option("files", files, "Two decomposition files")->required()->expected(2)->check(CLI::ExistingFile);
  compose->add_flag("--keep-tower-basis", keep_tower, "Keep the tower basis instead of re-basing");
  compose->add_option("--output", output, "Output path");

  // verify
  std::string file;
  bool exhaustive = false;
  auto* verify = app.add_subcommand("verify", "Verify a decomposition file");
  verify->add_option("file", file, "Decomposition file")->required()->check(CLI::ExistingFile);
  verify->add_flag("--exhaustive", exhaustive, "Also check every product (|E| <= 4096)");

  // rank-search
  std::size_t r_max = 0;
  std::optional<std::uint64_t> budget;
  bool no_normalize = false;
  auto* rank = app.add_subcommand("rank-search", "Exhaustive tensor-rank search");
  rank->add_option("--q", q, "Base field size (prime power)")->required();
  rank->add_option("--n", n, "Extension degree")->required()->check(CLI::PositiveNumber);
  rank->add_option("--r-max", r_max, "Largest rank tried")->required()->check(CLI::PositiveNumber);
  rank->add_option("--budget", budget, "Node budget (default: BILMULT_BUDGET or 1e9)");
  rank->add_flag("--no-normalize", no_normalize, "Do not normalise a and b");
  rank->add_flag("--serial", serial, "Single-threaded search");
  rank->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  rank->add_option("--output", output, "Write the found decomposition here");

  // tower
  std::string family;
  std::uint64_t p = 0;
  unsigned r = 1;
  unsigned k_max = 0;
  bool checks = false;
  auto* tower = app.add_subcommand("tower", "Tower step data and inequality checks");
  tower->add_option("--family", family, "gs-t2, gs-t3, kummer-p2 or kummer-p")
      ->required()
      ->check(CLI::IsMember({"gs-t2", "gs-t3", "kummer-p2", "kummer-p"}));
  tower->add_option("--p", p, "Characteristic")->required();
  tower->add_option("--r", r, "q = p^r (GS families)")->check(CLI::Range(1, 62));
  tower->add_option("--k-max", k_max, "Largest step index")->required()->check(CLI::Range(0, 64));
  tower->add_flag("--checks", checks, "Print the inequality checks instead of the steps");
  tower->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // asymptotic
  std::string aq;
  auto* asym = app.add_subcommand("asymptotic", "Bounds on m_q and M_q");
  asym->add_option("--q", q, "Base field size (prime power)")->required();
  asym->add_option("--aq", aq, "Lower bound for A(q), as a/b or decimal");
  asym->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*bound) {
      BoundEngine engine(BoundOptions{depth, !no_witness});
      const BoundResult lo = best_lower_bound(q, n);
      const BoundResult up = engine.best_upper_bound(q, n);
      if (format == "json") {
        Json j = Json::object();
        j["q"] = q;
        j["n"] = n;
        j["lower"] = bound_to_json(lo);
        j["upper"] = bound_to_json(up);
        out << j.dump(2) << '\n';
      } else {
        out << "q=" << q << " n=" << n << '\n';
        out << bound_line("lower", lo);
        out << bound_line("upper", up);
        out << "range " << to_string(lo.value) << '/' << to_string(up.value) << '\n';
        if (up.witness) out << "witness rank " << up.witness->rank() << " verified\n";
      }
      return 0;
    }
    if (*table) {
      const BoundOptions opts{depth, !no_witness};
      const BoundTable t = serial ? bound_table_serial(q, n_max, opts) : bound_table(q, n_max, opts);
      emit(out, output, format == "json" ? table_to_json(t) : table_to_csv(t));
      return 0;
    }
    if (*construct) {
      const BilinearDecomposition d = toom_construct(base_field(q), n);
      emit(out, output, decomposition_to_json(d));
      return 0;
    }
    if (*compose) {
      const BilinearDecomposition a = decomposition_from_json(read_file(files[0]));
      const BilinearDecomposition b = decomposition_from_json(read_file(files[1]));
      const ComposeOptions opts{keep_tower};
      // The inner factor is the one whose extension is the other's base.
      const bool a_inner = b.base() == a.extension();
      const BilinearDecomposition c = a_inner ? compose_decompositions(b, a, opts) : compose_decompositions(a, b, opts);
      emit(out, output, decomposition_to_json(c));
      return 0;
    }
    if (*verify) {
      const BilinearDecomposition d = decomposition_from_json(read_file(file), /*skip_verify=*/true);
      const VerifyReport rep = verify_report(d);
      if (!rep.valid) {
        out << "INVALID (" << rep.failing_pair->first << "," << rep.failing_pair->second << ")\n";
        return kExitDomain;
      }
      if (exhaustive) {
        const ExhaustiveReport ex = exhaustive_check(d);
        if (ex.mismatches != 0) {
          out << "INVALID exhaustive mismatches " << ex.mismatches << '\n';
          return kExitDomain;
        }
        out << "VALID rank " << d.rank() << " pairs " << ex.pairs_checked << '\n';
        return 0;
      }
      out << "VALID rank " << d.rank() << '\n';
      return 0;
    }
    if (*rank) {
      RankSearchOptions opts;
      opts.budget = budget ? *budget : budget_from_env(opts.budget);
      opts.normalize = !no_normalize;
      const FieldDescriptor K = base_field(q);
      const RankSearchReport rep =
          serial ? brute_force_rank_serial(K, n, r_max, opts) : brute_force_rank(K, n, r_max, opts);
      if (rep.decomposition && !output.empty()) emit(out, output, decomposition_to_json(*rep.decomposition));
      if (format == "json") {
        Json j = Json::object();
        j["q"] = rep.q;
        j["n"] = rep.n;
        j["r_max"] = rep.r_max;
        j["outcome"] = outcome_name(rep.outcome);
        j["rank"] = rep.rank;
        j["nodes_explored"] = rep.nodes_explored;
        j["budget"] = rep.budget;
        j["decomposition"] = rep.decomposition ? decomposition_to_json_value(*rep.decomposition) : Json(nullptr);
        out << j.dump(2) << '\n';
      } else {
        out << "q=" << rep.q << " n=" << rep.n << " r_max=" << rep.r_max << '\n';
        out << "outcome " << outcome_name(rep.outcome) << '\n';
        out << "rank " << rep.rank << '\n';
        out << "nodes " << rep.nodes_explored << " budget " << rep.budget << '\n';
      }
      return rep.outcome == SearchOutcome::Aborted ? kExitDomain : 0;
    }
    if (*tower) {
      const TowerFamily f = make_family(parse_family(family), p, r);
      if (checks) {
        const LemmaReport rep = check_lemma_inequalities(f, k_max);
        if (format == "json") {
          Json arr = Json::array();
          for (const auto& c : rep.checks) {
            Json j = Json::object();
            j["name"] = c.name;
            j["k"] = c.k;
            j["s"] = c.s ? Json(*c.s) : Json(nullptr);
            j["status"] = status_name(c.status);
            j["detail"] = c.detail;
            arr.push_back(std::move(j));
          }
          out << arr.dump(2) << '\n';
        } else {
          out << "name,k,s,status,detail\n";
          for (const auto& c : rep.checks)
            out << c.name << ',' << c.k << ',' << (c.s ? std::to_string(*c.s) : "") << ',' << status_name(c.status)
                << ',' << c.detail << '\n';
        }
        return rep.count(CheckStatus::Fail) == 0 ? 0 : kExitDomain;
      }
      const auto rows = tower_rows(f, k_max);
      if (format == "json") {
        Json arr = Json::array();
        for (const auto& st : rows) {
          Json j = Json::object();
          j["k"] = st.k;
          j["s"] = st.s ? Json(*st.s) : Json(nullptr);
          j["genus_exact"] = st.genus_exact ? Json(to_string(*st.genus_exact)) : Json(nullptr);
          j["genus_lower"] = to_string(st.genus_lower);
          j["genus_upper"] = to_string(st.genus_upper);
          j["places_lower"] = to_string(st.places_lower);
          if (st.kash) {
            j["table"] = {{"N1", to_string(st.kash->N1)},
                          {"N2", to_string(st.kash->N2)},
                          {"genus", to_string(st.kash->genus)},
                          {"gamma", to_string(kash_gamma(*st.kash))}};
          }
          arr.push_back(std::move(j));
        }
        Json doc = Json::object();
        doc["family"] = tower_kind_name(f.kind);
        doc["p"] = f.p;
        doc["r"] = f.r;
        doc["steps"] = std::move(arr);
        out << doc.dump(2) << '\n';
      } else {
        out << "family,p,r,k,s,genus_exact,genus_lower,genus_upper,places_lower,table_N1,table_N2,table_genus\n";
        for (const auto& st : rows) {
          out << tower_kind_name(f.kind) << ',' << f.p << ',' << f.r << ',' << st.k << ','
              << (st.s ? std::to_string(*st.s) : "") << ',' << opt_big(st.genus_exact) << ','
              << to_string(st.genus_lower) << ',' << to_string(st.genus_upper) << ',' << to_string(st.places_lower)
              << ',';
          if (st.kash)
            out << to_string(st.kash->N1) << ',' << to_string(st.kash->N2) << ',' << to_string(st.kash->genus);
          else
            out << ",,";
          out << '\n';
        }
      }
      return 0;
    }
    if (*asym) {
      std::optional<Rational> A;
      if (!aq.empty()) A = parse_rational(aq);
      const AsymptoticReport rep = asymptotic_report(q, A);
      if (format == "json") {
        out << asymptotic_to_json(rep).dump(2) << '\n';
      } else {
        out << "q=" << q << '\n';
        for (const auto& e : rep.entries) {
          out << e.quantity << ' ' << e.relation << ' ' << (e.value ? to_string(*e.value) : std::string("-")) << ' '
              << e.rule << (e.applicable ? "" : " [inapplicable]") << (e.conditional ? " [conditional]" : "");
          if (!e.note.empty()) out << " (" << e.note << ')';
          out << '\n';
        }
      }
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace bilmult
