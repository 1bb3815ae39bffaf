// mil: enumerate, analyze and search f-expressions over f(x,y) = x^2 + y^3.
//
// Exit codes: 0 success, 1 internal failure or failed claim, 2 usage error,
// 3 infeasible within the configured bounds.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mil/claims.hpp"
#include "mil/diophantine.hpp"
#include "mil/eval.hpp"
#include "mil/search.hpp"
#include "mil/structure.hpp"
#include "mil/term.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

enum class Format { Text, Json, Csv };

struct RunConfig {
  std::size_t max_leaves = 8;
  unsigned num_vars = 1;
  std::size_t expansion_cap = mil::kDefaultExpansionCap;
  std::string format;  // empty: the subcommand's default
  std::string cache;
  unsigned workers = 1;
  unsigned max_exp = 8;
  unsigned max_k = 6;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Format pick_format(const RunConfig& cfg, Format fallback) {
  if (cfg.format.empty()) return fallback;
  if (cfg.format == "text") return Format::Text;
  if (cfg.format == "json") return Format::Json;
  if (cfg.format == "csv") return Format::Csv;
  throw UsageError("unknown format: " + cfg.format);
}

void require(Format f, std::initializer_list<Format> allowed, const char* command) {
  for (Format a : allowed) {
    if (a == f) return;
  }
  throw UsageError(std::string("format not supported by ") + command);
}

std::optional<std::string> cache_path(const RunConfig& cfg) {
  if (const char* env = std::getenv("MIL_CACHE"); env != nullptr && *env != '\0') return std::string(env);
  if (!cfg.cache.empty()) return cfg.cache;
  return std::nullopt;
}

mil::Term parse_arg(const std::string& text, unsigned numVars) {
  try {
    return mil::parse_term(text, static_cast<mil::VarIndex>(numVars));
  } catch (const mil::ParseError& e) {
    throw UsageError("cannot parse term '" + text + "': " + e.what());
  }
}

std::string csv_quote(const std::string& s) { return '"' + s + '"'; }

int cmd_enumerate(const RunConfig& cfg) {
  const Format fmt = pick_format(cfg, Format::Text);
  const auto nv = static_cast<mil::VarIndex>(cfg.num_vars);
  nlohmann::json arr = nlohmann::json::array();
  if (fmt == Format::Csv) std::cout << "leaves,term\n";
  mil::for_each_term(cfg.max_leaves, nv, [&](const mil::Term& t) {
    const std::string s = mil::render(t, nv);
    switch (fmt) {
      case Format::Text: std::cout << s << '\n'; break;
      case Format::Csv: std::cout << t.leaf_count() << ',' << csv_quote(s) << '\n'; break;
      case Format::Json: arr.push_back(s); break;
    }
    return true;
  });
  if (fmt == Format::Json) std::cout << arr.dump(2) << '\n';
  return kExitOk;
}

int cmd_analyze(const RunConfig& cfg, const std::string& text) {
  const Format fmt = pick_format(cfg, Format::Json);
  require(fmt, {Format::Json, Format::Text}, "analyze");
  const mil::Term t = parse_arg(text, 1);
  const nlohmann::json report = mil::analyze(t);
  if (fmt == Format::Json) {
    std::cout << report.dump(2) << '\n';
  } else {
    for (const auto& [key, value] : report.items()) std::cout << key << ": " << value.dump() << '\n';
  }
  return kExitOk;
}

int cmd_search(const RunConfig& cfg) {
  const Format fmt = pick_format(cfg, Format::Text);
  require(fmt, {Format::Json, Format::Text}, "search");
  mil::SearchOptions opts;
  opts.workers = cfg.workers;
  opts.expansion_cap = cfg.expansion_cap;
  opts.cache_path = cache_path(cfg);
  const mil::SearchReport report =
      mil::find_identities(cfg.max_leaves, static_cast<mil::VarIndex>(cfg.num_vars), opts);
  if (fmt == Format::Json) {
    std::cout << mil::to_json(report).dump(2) << '\n';
  } else {
    std::cout << mil::to_text(report);
  }
  if (!report.complete || !report.unresolved.empty()) return kExitInfeasible;
  return kExitOk;
}

int cmd_lexmin(const RunConfig& cfg, unsigned m, unsigned n) {
  const Format fmt = pick_format(cfg, Format::Text);
  require(fmt, {Format::Json, Format::Text}, "lexmin");
  if (n == 0) throw UsageError("lexmin needs n >= 1");
  const mil::Term t = mil::build_lexmin(m, n);
  if (fmt == Format::Json) {
    nlohmann::json j;
    j["m"] = m;
    j["n"] = n;
    j["term"] = mil::render(t);
    j["dege"] = mil::dege_orde(t).dege;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << mil::render(t) << '\n';
  }
  return kExitOk;
}

int cmd_isolated(const RunConfig& cfg, const std::string& text, const std::string& wrtText) {
  const Format fmt = pick_format(cfg, Format::Text);
  require(fmt, {Format::Json, Format::Text}, "isolated");
  const mil::Term t = parse_arg(text, 1);
  nlohmann::json j;
  j["term"] = mil::render(t);
  int code = kExitOk;
  std::string line;
  if (wrtText.empty()) {
    const mil::IsolationResult r = mil::is_e_isolated(t);
    j["candidates"] = r.candidates.get_str();
    switch (r.status) {
      case mil::IsolationStatus::Isolated:
        j["status"] = "isolated";
        line = "isolated";
        break;
      case mil::IsolationStatus::Witness:
        j["status"] = "witness";
        j["witness"] = mil::render(*r.witness);
        line = "not isolated: " + mil::render(*r.witness);
        break;
      case mil::IsolationStatus::Infeasible:
        j["status"] = "infeasible";
        line = "infeasible: degree class has " + r.candidates.get_str() + " terms";
        code = kExitInfeasible;
        break;
    }
  } else {
    const mil::Term a = parse_arg(wrtText, 1);
    j["withRespectTo"] = mil::render(a);
    mil::WrtResult r;
    try {
      r = mil::is_e_isolated_wrt(t, a);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    j["candidates"] = r.candidates.get_str();
    switch (r.status) {
      case mil::WrtStatus::Yes:
        j["status"] = "isolated";
        line = "isolated with respect to " + mil::render(a);
        break;
      case mil::WrtStatus::Counterexample: {
        j["status"] = "counterexample";
        j["equivalent"] = mil::render(*r.equivalent);
        nlohmann::json stages = nlohmann::json::array();
        for (const auto& s : r.development->stages) stages.push_back(mil::render(s));
        j["development"] = stages;
        line = "not isolated: development of " + mil::render(*r.equivalent) + " differs at stage " +
               std::to_string(mil::stage_count(t));
        break;
      }
      case mil::WrtStatus::Infeasible:
        j["status"] = "infeasible";
        line = "infeasible: degree class has " + r.candidates.get_str() + " terms";
        code = kExitInfeasible;
        break;
    }
  }
  if (fmt == Format::Json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << line << '\n';
  }
  return code;
}

int cmd_verify(const RunConfig& cfg, const std::string& id, std::optional<std::uint64_t> bound) {
  const Format fmt = pick_format(cfg, Format::Text);
  require(fmt, {Format::Json, Format::Text}, "verify");
  std::vector<mil::ClaimReport> reports;
  if (id == "all") {
    if (bound) throw UsageError("--bound applies to a single claim");
    reports = mil::verify_all(cfg.workers);
  } else {
    try {
      reports.push_back(mil::verify_claim(id, bound));
    } catch (const mil::UnknownClaim& e) {
      throw UsageError(e.what());
    }
  }
  bool failed = false;
  bool infeasible = false;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    failed = failed || r.verdict == mil::Verdict::Fail;
    infeasible = infeasible || r.verdict == mil::Verdict::Infeasible;
    if (fmt == Format::Json) {
      arr.push_back(mil::to_json(r));
    } else {
      std::cout << mil::to_text(r) << '\n';
    }
  }
  if (fmt == Format::Json) std::cout << (reports.size() == 1 ? arr[0] : arr).dump(2) << '\n';
  if (failed) return kExitFailure;
  if (infeasible) return kExitInfeasible;
  return kExitOk;
}

int cmd_eq10(const RunConfig& cfg) {
  const Format fmt = pick_format(cfg, Format::Csv);
  std::vector<mil::Eq10Solution> sols;
  try {
    sols = mil::solve_eq10(cfg.max_exp, mil::kDefaultEq10Limit, cfg.workers);
  } catch (const std::out_of_range& e) {
    std::cerr << "mil: infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  }
  if (fmt == Format::Csv) {
    std::cout << mil::eq10_csv(sols);
  } else if (fmt == Format::Json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : sols) {
      arr.push_back({{"exponents", s.exps}, {"value", s.value.get_str()}, {"trivial", s.trivial}});
    }
    std::cout << arr.dump(2) << '\n';
  } else {
    std::size_t nontrivial = 0;
    for (const auto& s : sols) {
      if (s.trivial) continue;
      ++nontrivial;
      const auto& e = s.exps;
      std::cout << "2^" << e[0] << "3^" << e[1] << " + 2^" << e[2] << "3^" << e[3] << " = 2^" << e[4] << "3^" << e[5]
                << " + 2^" << e[6] << "3^" << e[7] << " = " << s.value.get_str() << '\n';
    }
    std::cout << sols.size() << " solutions, " << nontrivial << " nontrivial\n";
  }
  return kExitOk;
}

int cmd_eq9(const RunConfig& cfg, const std::vector<unsigned>& mnij, unsigned pi1, unsigned pi2) {
  const Format fmt = pick_format(cfg, Format::Csv);
  if (mnij.size() != 4) throw UsageError("eq9 needs m n i j");
  const mil::Eq9Params p{mnij[0], mnij[1], mnij[2], mnij[3], pi1, pi2};
  std::vector<mil::Eq9Solution> sols;
  try {
    sols = mil::solve_eq9(p, cfg.max_k);
  } catch (const std::out_of_range& e) {
    std::cerr << "mil: infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (fmt == Format::Csv) {
    std::cout << mil::eq9_csv(sols);
  } else if (fmt == Format::Json) {
    nlohmann::json j;
    j["params"] = {{"m", p.m}, {"n", p.n}, {"i", p.i}, {"j", p.j}, {"pi1", p.pi1}, {"pi2", p.pi2}};
    j["maxK"] = cfg.max_k;
    j["dgap"] = mil::eq9_dgap(p).get_str();
    j["solutions"] = nlohmann::json::array();
    for (const auto& s : sols) {
      j["solutions"].push_back(
          {{"k1", s.k1}, {"k2", s.k2}, {"l1", s.l1}, {"l2", s.l2}, {"value", s.value.get_str()}});
    }
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& s : sols) {
      std::cout << "k1=" << s.k1 << " k2=" << s.k2 << " l1=" << s.l1 << " l2=" << s.l2 << " value=" << s.value.get_str()
                << '\n';
    }
    std::cout << sols.size() << " solutions\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mil - f-expressions over f(x,y) = x^2 + y^3"};
  app.require_subcommand(1);
  RunConfig cfg;

  app.add_option("--max-leaves", cfg.max_leaves, "Leaf bound for enumerate/search")->capture_default_str();
  app.add_option("--num-vars", cfg.num_vars, "Number of variables")->check(CLI::Range(1u, 9u))->capture_default_str();
  app.add_option("--expansion-cap", cfg.expansion_cap, "Largest polynomial degree expanded exactly")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--cache", cfg.cache, "Fingerprint cache file (MIL_CACHE overrides)");
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
  app.add_option("--max-exp", cfg.max_exp, "Exponent bound for eq10")->capture_default_str();
  app.add_option("--max-k", cfg.max_k, "k1 + k2 bound for eq9")->capture_default_str();

  auto* enumerate = app.add_subcommand("enumerate", "Stream every term up to --max-leaves");
  auto* analyze = app.add_subcommand("analyze", "Structure report for a term");
  std::string termText;
  analyze->add_option("term", termText, "Term, e.g. f(x,f(x,x))")->required();

  auto* search = app.add_subcommand("search", "Exhaustive identity search with certificate");

  auto* lexmin = app.add_subcommand("lexmin", "Lexicographically minimal term of degree 2^m 3^n");
  unsigned lm = 0;
  unsigned ln = 0;
  lexmin->add_option("m", lm)->required();
  lexmin->add_option("n", ln)->required();

  auto* isolated = app.add_subcommand("isolated", "Decide e-isolation of a term");
  std::string wrtText;
  isolated->add_option("term", termText)->required();
  isolated->add_option("--wrt", wrtText, "Check isolation with respect to this term instead");

  auto* verify = app.add_subcommand("verify", "Check a registered claim, or all of them");
  std::string claimId;
  std::optional<std::uint64_t> bound;
  verify->add_option("claim", claimId, "Claim id or 'all'")->required();
  verify->add_option("--bound", bound, "Override the claim's default bound");
  auto* list = app.add_subcommand("claims", "List registered claims");

  auto* dioph = app.add_subcommand("dioph", "Bounded exponential Diophantine solvers");
  dioph->require_subcommand(1);
  auto* eq10 = dioph->add_subcommand("eq10", "2^a3^b + 2^c3^d = 2^e3^f + 2^g3^h, exponents <= --max-exp");
  auto* eq9 = dioph->add_subcommand("eq9", "2^{m+k1}3^{n+k2} - dgap = 2^l1 3^l2, k1 + k2 <= --max-k");
  std::vector<unsigned> mnij;
  unsigned pi1 = 0;
  unsigned pi2 = 1;
  eq9->add_option("params", mnij, "m n i j")->expected(4)->required();
  eq9->add_option("--pi1", pi1)->capture_default_str();
  eq9->add_option("--pi2", pi2)->capture_default_str();

  // Global flags are accepted before or after the subcommand.
  for (CLI::App* sub : {enumerate, analyze, search, lexmin, isolated, verify, list, dioph, eq10, eq9}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enumerate) return cmd_enumerate(cfg);
    if (*analyze) return cmd_analyze(cfg, termText);
    if (*search) return cmd_search(cfg);
    if (*lexmin) return cmd_lexmin(cfg, lm, ln);
    if (*isolated) return cmd_isolated(cfg, termText, wrtText);
    if (*verify) return cmd_verify(cfg, claimId, bound);
    if (*list) {
      for (const auto& c : mil::claim_registry()) std::cout << c.id << '\t' << c.statement << '\n';
      return kExitOk;
    }
    if (*eq10) return cmd_eq10(cfg);
    if (*eq9) return cmd_eq9(cfg, mnij, pi1, pi2);
  } catch (const UsageError& e) {
    std::cerr << "mil: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "mil: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
