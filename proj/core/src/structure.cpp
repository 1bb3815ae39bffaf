#include "mil/structure.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "mil/catalog.hpp"

namespace mil {

namespace {

Exponent add_checked(Exponent a, Exponent b) {
  if (a > std::numeric_limits<Exponent>::max() - b) throw std::overflow_error("exponent exceeds 64 bits");
  return a + b;
}

Exponent dege(const Term& t) { return dege_orde(t).dege; }

bool is_fxx(const Term& t) { return !t.is_leaf() && t.left().is_leaf() && t.right().is_leaf(); }

struct NodeRecord {
  Path path;
  Term term;
  Exponent maxt = 0;
};

// Pre-order records with maxt for every node, one pass top-down.
void collect_nodes(const Term& t, const Path& path, Exponent above, std::vector<NodeRecord>& out) {
  const Exponent d = dege(t);
  out.push_back({path, t, add_checked(d, above)});
  if (t.is_leaf()) return;
  const Exponent dl = dege(t.left());
  const Exponent dr = dege(t.right());
  collect_nodes(t.left(), path.child(Path::Move::Left), add_checked(above, dl), out);
  collect_nodes(t.right(), path.child(Path::Move::Right), add_checked(above, add_checked(dr, dr)), out);
}

std::vector<NodeRecord> node_records(const Term& t) {
  std::vector<NodeRecord> out;
  collect_nodes(t, Path::root(), 0, out);
  return out;
}

Poly image_with_doubled(const Term& t, const Path& node, std::size_t depth, std::size_t cap) {
  if (depth == node.size()) return scale(evaluate_exact(t, cap), 2);
  const bool left = node[depth] == Path::Move::Left;
  const Poly a = left ? image_with_doubled(t.left(), node, depth + 1, cap) : evaluate_exact(t.left(), cap);
  const Poly b = left ? evaluate_exact(t.right(), cap) : image_with_doubled(t.right(), node, depth + 1, cap);
  return multiply(a, a, cap) + multiply(multiply(b, b, cap), b, cap);
}

std::vector<Development> developments_of(const Term& t) {
  if (t.is_leaf()) return {};
  if (is_fxx(t)) return {Development{{t}, Path::root()}};
  const Exponent dl = dege(t.left());
  const Exponent dr = dege(t.right());
  std::vector<Development> out;
  auto extend = [&](const Term& child, char move) {
    for (Development& d : developments_of(child)) {
      d.stages.push_back(t);
      d.core_path = Path(std::string(1, move) + d.core_path.str());
      if (std::none_of(out.begin(), out.end(), [&](const Development& o) { return o.stages == d.stages; })) {
        out.push_back(std::move(d));
      }
    }
  };
  if (3 * dr <= 2 * dl) extend(t.left(), 'L');
  if (2 * dl <= 3 * dr) extend(t.right(), 'R');
  return out;
}

bool under(const Path& prefix, const Path& p) { return prefix.is_prefix_of(p); }

}  // namespace

Exponents23 factor_2_3(Exponent d) {
  if (d == 0) throw std::domain_error("0 is not of the form 2^a 3^b");
  Exponents23 e;
  while (d % 2 == 0) {
    d /= 2;
    ++e.two;
  }
  while (d % 3 == 0) {
    d /= 3;
    ++e.three;
  }
  if (d != 1) throw std::domain_error("degree is not of the form 2^a 3^b");
  return e;
}

std::size_t stage_count(const Term& t) {
  const Exponents23 e = factor_2_3(dege(t));
  return e.two + e.three;
}

Exponent maxt_exponent(const Term& t, const Path& node) {
  std::vector<Term> chain{t};
  for (std::size_t i = 0; i < node.size(); ++i) {
    const Term& cur = chain.back();
    if (cur.is_leaf()) throw std::out_of_range("path leaves the term: " + node.str());
    chain.push_back(node[i] == Path::Move::Left ? cur.left() : cur.right());
  }
  Exponent r = dege(chain.back());
  for (std::size_t k = node.size(); k-- > 0;) {
    const Exponent d = dege(chain[k + 1]);
    r = add_checked(r, node[k] == Path::Move::Left ? d : add_checked(d, d));
  }
  return r;
}

Exponent maxt_exponent_by_expansion(const Term& t, const Path& node, std::size_t cap) {
  (void)t.at(node);
  const Poly doubled = image_with_doubled(collapse(t), node, 0, cap);
  return subtract_dominated(doubled, evaluate_exact(t, cap)).degree();
}

std::vector<Path> cores(const Term& t) {
  if (t.is_leaf()) throw std::invalid_argument("x has no cores");
  const Exponent top = dege(t);
  std::vector<Path> out;
  for (const NodeRecord& r : node_records(t)) {
    if (is_fxx(r.term) && r.maxt == top) out.push_back(r.path);
  }
  return out;
}

bool contains_core(const Term& t, const Path& node) {
  (void)t.at(node);
  if (t.is_leaf()) return false;
  const auto cs = cores(t);
  return std::any_of(cs.begin(), cs.end(), [&](const Path& c) { return under(node, c); });
}

std::vector<NodeInfo> node_table(const Term& t) {
  const auto records = node_records(t);
  const std::vector<Path> cs = t.is_leaf() ? std::vector<Path>{} : cores(t);
  std::vector<NodeInfo> out;
  out.reserve(records.size());
  for (const NodeRecord& r : records) {
    const bool hasCore = std::any_of(cs.begin(), cs.end(), [&](const Path& c) { return under(r.path, c); });
    out.push_back({r.path, r.term, dege(r.term), r.maxt, hasCore});
  }
  return out;
}

std::vector<Development> developments(const Term& t) {
  if (t.is_leaf()) throw std::invalid_argument("x has no development");
  return developments_of(collapse(t));
}

std::optional<Term> stage_term(const Term& t, std::size_t n) {
  const std::size_t total = stage_count(t);
  if (n < 1 || n > total) {
    throw std::out_of_range("stage " + std::to_string(n) + " outside 1.." + std::to_string(total));
  }
  const auto devs = developments(t);
  const Term& first = devs.front().stages[n - 1];
  for (const Development& d : devs) {
    if (d.stages[n - 1] != first) return std::nullopt;
  }
  return first;
}

GapReport gap_report(const Term& t, const Path& node) {
  const Term& sub = t.at(node);
  if (sub.is_leaf()) throw std::invalid_argument("gap report needs an application node");
  const bool coreLeft = contains_core(t, node.child(Path::Move::Left));
  const bool coreRight = contains_core(t, node.child(Path::Move::Right));
  if (coreLeft == coreRight) {
    throw std::invalid_argument(coreLeft ? "both children contain cores" : "neither child contains a core");
  }
  GapReport g;
  g.node = node;
  g.core_on_right = coreRight;
  const Term& b = coreRight ? sub.right() : sub.left();
  const Term& c = coreRight ? sub.left() : sub.right();
  const Exponent db = dege(b), dc = dege(c);
  g.dgap = coreRight ? 3 * db - 2 * dc : 2 * db - 3 * dc;
  g.pi1 = coreRight ? 0 : 1;
  g.pi2 = coreRight ? 1 : 0;
  g.dege = dege(t);
  g.maxt_exponent = maxt_exponent(t, node.child(coreRight ? Path::Move::Left : Path::Move::Right));
  g.core_side = factor_2_3(db);
  g.other = factor_2_3(dc);
  g.whole = factor_2_3(g.dege);
  return g;
}

const char* to_string(HdCase c) {
  switch (c) {
    case HdCase::NotHD:
      return "none";
    case HdCase::Case1:
      return "case1";
    case HdCase::Case2:
      return "case2";
    case HdCase::Case3:
      return "case3";
    case HdCase::Case4:
      return "case4";
  }
  return "?";
}

bool is_disjoint(const Term& t) {
  if (t.is_leaf()) throw std::invalid_argument("disjointness needs an application");
  const DegreeOrder a = dege_orde(t.left());
  const DegreeOrder b = dege_orde(t.right());
  return 2 * a.dege < 3 * b.orde || 3 * b.dege < 2 * a.orde;
}

bool hereditarily_disjoint_by_definition(const Term& t) {
  if (t.is_leaf()) return true;
  for (const Development& d : developments(t)) {
    if (std::all_of(d.stages.begin(), d.stages.end(), [](const Term& s) { return is_disjoint(s); })) return true;
  }
  return false;
}

HdClassification classify_hereditarily_disjoint(const Term& t) {
  if (t.is_leaf()) return {HdCase::Case1, std::nullopt};
  const Term& l = t.left();
  const Term& r = t.right();
  if (l.is_leaf() && classify_hereditarily_disjoint(r).kind != HdCase::NotHD) return {HdCase::Case2, r};
  if (r.is_leaf() && dege_orde(l).orde >= 2 && classify_hereditarily_disjoint(l).kind != HdCase::NotHD) {
    return {HdCase::Case3, l};
  }
  if (is_fxx(l) && dege_orde(r).orde >= 3 && classify_hereditarily_disjoint(r).kind != HdCase::NotHD) {
    return {HdCase::Case4, r};
  }
  return {HdCase::NotHD, std::nullopt};
}

Term build_B(unsigned n) {
  Term t = x();
  for (unsigned i = 0; i < n; ++i) t = f(x(), t);
  return t;
}

Term build_lexmin(unsigned m, unsigned n) {
  if (n == 0) throw std::invalid_argument("no term has degree 2^m with m >= 1");
  Term t = build_B(n);
  for (unsigned i = 0; i < m; ++i) t = f(t, x());
  return t;
}

Term apply_Y_chain(const Term& seed, const std::vector<unsigned>& indices) {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] == 0) throw std::invalid_argument("Y indices start at 1");
    if (i > 0 && indices[i] >= indices[i - 1]) throw std::invalid_argument("Y indices must be strictly decreasing");
  }
  Term t = seed;
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) t = f(t, build_B(*it));
  return t;
}

WrtResult is_e_isolated_wrt(const Term& b, const Term& a, const std::vector<Term>& equivalents) {
  if (a.is_leaf() || b.is_leaf()) throw std::invalid_argument("x is not a stage term");
  const std::size_t n = stage_count(b);
  const auto own = developments(a);
  if (std::none_of(own.begin(), own.end(),
                   [&](const Development& d) { return d.stages.size() >= n && d.stages[n - 1] == b; })) {
    throw std::invalid_argument("b is not a stage term of any development of a");
  }
  WrtResult result;
  result.candidates = equivalents.size();
  for (const Term& other : equivalents) {
    for (Development& d : developments(other)) {
      if (d.stages.size() < n || d.stages[n - 1] != b) {
        result.status = WrtStatus::Counterexample;
        result.equivalent = other;
        result.development = std::move(d);
        return result;
      }
    }
  }
  result.status = WrtStatus::Yes;
  return result;
}

WrtResult is_e_isolated_wrt(const Term& b, const Term& a, std::uint64_t budget) {
  if (!b.is_leaf() && is_fxx(b) && !a.is_leaf()) {
    // Stage 1 of every development is f(x,x) by definition.
    WrtResult result;
    result.status = WrtStatus::Yes;
    return result;
  }
  EquivalentsResult found = e_equivalents(a, budget);
  if (!found.feasible) {
    // Still validate the precondition before reporting.
    (void)is_e_isolated_wrt(b, a, std::vector<Term>{});
    WrtResult result;
    result.candidates = found.candidates;
    return result;
  }
  WrtResult result = is_e_isolated_wrt(b, a, found.terms);
  result.candidates = found.candidates;
  return result;
}

SupplementReport find_supplementing(const Term& a, const Term& aBar, const Path& e1Path, const Path& b0Path,
                                    bool keepExcluded, std::uint64_t budget) {
  SupplementReport report;
  auto& v = report.violations;
  if (a.is_leaf()) {
    v.push_back("a is x");
    return report;
  }
  if (b0Path.is_root() || e1Path != b0Path.sibling()) {
    v.push_back("E1 and B0 are not the two children of one node");
    return report;
  }
  try {
    (void)a.at(e1Path);
    (void)a.at(b0Path);
  } catch (const std::out_of_range&) {
    v.push_back("path does not address a subterm of a");
    return report;
  }
  const Term& b0 = a.at(b0Path);
  const Term& e1 = a.at(e1Path);
  const Path parent = b0Path.parent();

  if (!e_equivalent(a, aBar)) v.push_back("e(a) != e(aBar)");

  const auto aCores = cores(a);
  if (!std::all_of(aCores.begin(), aCores.end(), [&](const Path& c) { return under(b0Path, c); })) {
    v.push_back("B0 does not contain all cores of a");
  } else {
    try {
      const WrtResult wrt = is_e_isolated_wrt(b0, a, budget);
      if (wrt.status == WrtStatus::Counterexample) v.push_back("B0 is not e-isolated with respect to a");
      if (wrt.status == WrtStatus::Infeasible) v.push_back("e-isolation of B0 with respect to a exceeds the budget");
    } catch (const std::invalid_argument&) {
      v.push_back("B0 is not a stage term of a");
    }
    const std::size_t s = stage_count(b0) + 1;
    const auto st = stage_term(a, s);
    if (!st || *st != a.at(parent)) v.push_back("stage m+n+1 of a is not f(E1,B0) or f(B0,E1)");
  }

  // Every x in E1 must outrank every x outside the node f(E1,B0).
  std::optional<Exponent> minInside, maxOutside;
  for (const NodeRecord& r : node_records(a)) {
    if (!r.term.is_leaf()) continue;
    if (under(e1Path, r.path)) {
      minInside = std::min(minInside.value_or(r.maxt), r.maxt);
    } else if (!under(parent, r.path)) {
      maxOutside = std::max(maxOutside.value_or(r.maxt), r.maxt);
    }
  }
  if (minInside && maxOutside && !(*minInside > *maxOutside)) {
    v.push_back("some x outside f(E1,B0) reaches a maxt as high as an x inside E1");
  }
  if (!v.empty()) return report;

  const bool e1Left = e1Path.back() == Path::Move::Left;
  report.pi1 = e1Left ? 0 : 1;
  report.pi2 = e1Left ? 1 : 0;
  const Exponent db = dege(b0), de = dege(e1);
  report.dgap = e1Left ? 3 * db - 2 * de : 2 * db - 3 * de;
  const Exponents23 base = factor_2_3(db);
  const std::size_t first = base.two + base.three + 1;

  for (const Development& d : developments(aBar)) {
    const std::size_t total = d.stages.size();
    for (std::size_t s = first; s <= total; ++s) {
      const Term& stage = d.stages[s - 1];
      const Term& prev = d.stages[s - 2];
      // The core path enters the previous stage through move number total - s.
      const bool prevLeft = d.core_path[total - s] == Path::Move::Left;
      const Term& c = prevLeft ? stage.right() : stage.left();
      const Exponents23 e = factor_2_3(dege(stage));
      if (e.two < base.two || e.three < base.three) continue;
      const Exponent dp = dege(prev), dc = dege(c);
      const Exponent gap = prevLeft ? 2 * dp - 3 * dc : 3 * dp - 2 * dc;
      if (gap != report.dgap) continue;
      Supplement sup{e.two - base.two, e.three - base.three, c, false};
      sup.excluded = sup.k1 == report.pi1 && sup.k2 == report.pi2;
      if (sup.excluded && !keepExcluded) continue;
      const bool seen = std::any_of(report.supplements.begin(), report.supplements.end(), [&](const Supplement& o) {
        return o.k1 == sup.k1 && o.k2 == sup.k2 && o.c == sup.c;
      });
      if (!seen) report.supplements.push_back(std::move(sup));
    }
  }
  return report;
}

std::optional<bool> is_lex_minimal(const Term& t, std::uint64_t budget) {
  const Term shape = collapse(t);
  const Invariants target = invariants(shape);
  if (target.dege == 1) return true;
  const auto catalog = shared_catalog(target.dege);
  if (catalog->count(target.dege) > budget) return std::nullopt;
  bool minimal = true;
  catalog->for_each_pair(target.dege, [&](const CatalogEntry& a, const CatalogEntry& b) {
    const Invariants inv = compose(a.inv, b.inv);
    if (inv.lead > target.lead) return true;
    const Term candidate = Term::apply(a.term, b.term);
    if (candidate == shape) return true;
    if (inv.lead < target.lead || lex_compare_terms(candidate, shape) < 0) {
      minimal = false;
      return false;
    }
    return true;
  });
  return minimal;
}

nlohmann::json analyze(const Term& t, std::uint64_t budget) {
  const Term shape = collapse(t);
  const Invariants inv = invariants(shape);
  nlohmann::json j;
  j["term"] = render(t);
  j["dege"] = inv.dege;
  j["orde"] = inv.orde;
  if (inv.lead.fits_ulong_p()) {
    j["lead"] = inv.lead.get_ui();
  } else {
    j["lead"] = inv.lead.get_str();
  }
  auto corePaths = nlohmann::json::array();
  std::size_t devCount = 0;
  if (!shape.is_leaf()) {
    for (const Path& p : cores(shape)) corePaths.push_back(p.str());
    devCount = developments(shape).size();
  }
  j["cores"] = std::move(corePaths);
  j["developments"] = devCount;
  j["hereditarilyDisjoint"] = to_string(classify_hereditarily_disjoint(shape).kind);
  if (auto lm = is_lex_minimal(shape, budget)) j["lexmin"] = *lm;
  return j;
}

}  // namespace mil
