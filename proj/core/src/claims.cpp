#include "mil/claims.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "mil/catalog.hpp"
#include "mil/eval.hpp"
#include "mil/structure.hpp"
#include "mil/term.hpp"
#include "parallel.hpp"

namespace mil {

namespace {

using json = nlohmann::json;

// Largest degree class whose members are stored.
constexpr Exponent kClassLimit = 108;

std::string txt(const Term& t) { return render(t, 1); }

Exponent dege(const Term& t) { return dege_orde(t).dege; }

Exponent pow3(unsigned k) {
  Exponent r = 1;
  while (k-- > 0) r *= 3;
  return r;
}

// x, f(x,x), f(x,f(x,x)), ...
bool is_comb(Term t) {
  while (!t.is_leaf()) {
    if (!t.left().is_leaf()) return false;
    t = t.right();
  }
  return true;
}

// A stored degree class, its e-equivalence classes and lex keys.
struct ClassData {
  std::vector<Term> terms;
  std::vector<std::size_t> group;
  std::vector<std::vector<std::size_t>> groups;
  Integer base;
  // e(t) at a base above every coefficient sum of the class: equal values mean
  // equal images and value order is lex order.
  std::vector<Integer> values;
  std::unordered_map<Term, std::size_t> index;

  [[nodiscard]] std::vector<Term> partners(std::size_t i) const {
    std::vector<Term> out;
    for (std::size_t j : groups[group[i]]) out.push_back(terms[j]);
    return out;
  }
};

std::unique_ptr<ClassData> build_class(Exponent d) {
  const auto catalog = shared_catalog(kClassLimit);
  const auto& members = catalog->members(d);
  auto cd = std::make_unique<ClassData>();
  Integer maxSum = 0;
  for (const auto& m : members) {
    cd->index.emplace(m.term, cd->terms.size());
    cd->terms.push_back(m.term);
    if (m.inv.coeff_sum > maxSum) maxSum = m.inv.coeff_sum;
  }
  cd->base = maxSum + 1;
  cd->values.reserve(members.size());
  for (const auto& t : cd->terms) cd->values.push_back(fingerprint_value(t, cd->base));

  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cd->values[a] < cd->values[b]; });
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> run(members.size(), kNone);
  for (std::size_t k = 0; k < order.size(); ++k) {
    run[order[k]] = (k > 0 && cd->values[order[k]] == cd->values[order[k - 1]]) ? run[order[k - 1]] : order[k];
  }
  // Groups numbered by first member.
  cd->group.assign(members.size(), kNone);
  std::unordered_map<std::size_t, std::size_t> groupOfRun;
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto [it, fresh] = groupOfRun.emplace(run[i], cd->groups.size());
    if (fresh) cd->groups.emplace_back();
    cd->group[i] = it->second;
    cd->groups[it->second].push_back(i);
  }
  return cd;
}

const ClassData& class_data(Exponent d) {
  static std::mutex mutex;
  static std::map<Exponent, std::unique_ptr<ClassData>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[d];
  if (!slot) slot = build_class(d);
  return *slot;
}

std::vector<Exponent> class_degrees(Exponent bound) {
  std::vector<Exponent> out;
  for (Exponent d : shared_catalog(kClassLimit)->degrees()) {
    if (d > 1 && d <= bound) out.push_back(d);
  }
  return out;
}

using Nodes = std::vector<NodeInfo>;

std::size_t left_of(std::size_t i) { return i + 1; }
std::size_t right_of(const Nodes& n, std::size_t i) { return i + 2 * n[i + 1].term.leaf_count(); }

std::size_t index_of(const Nodes& n, const Path& p) {
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i].path == p) return i;
  }
  throw std::logic_error("path not in node table: " + p.str());
}

bool related(const Path& a, const Path& b) { return a.is_prefix_of(b) || b.is_prefix_of(a); }

// Largest maxt over nodes off the root path to p and outside the subtree at p.
Exponent ellipses_max(const Nodes& nodes, const Path& p, bool leavesOnly = false) {
  Exponent m = 0;
  for (const auto& n : nodes) {
    if (related(n.path, p) || (leavesOnly && !n.term.is_leaf())) continue;
    m = std::max(m, n.maxt);
  }
  return m;
}

Exponent min_leaf_maxt_under(const Nodes& nodes, const Path& p) {
  Exponent m = std::numeric_limits<Exponent>::max();
  for (const auto& n : nodes) {
    if (n.term.is_leaf() && p.is_prefix_of(n.path)) m = std::min(m, n.maxt);
  }
  return m;
}

bool holds_all_cores(const std::vector<Path>& cs, const Path& p) {
  return std::all_of(cs.begin(), cs.end(), [&](const Path& c) { return p.is_prefix_of(c); });
}

std::vector<Nodes> tables_of(const ClassData& cd) {
  std::vector<Nodes> out;
  out.reserve(cd.terms.size());
  for (const auto& t : cd.terms) out.push_back(node_table(t));
  return out;
}

struct Run {
  ClaimReport& r;
  void fail(json record) {
    ++r.failure_count;
    if (r.failures.size() < kMaxRecordedFailures) r.failures.push_back(std::move(record));
  }
};

// Claims of the form: whenever e(f(C1,C2)) = e(t0) with t0 matching `hyp`,
// `concl(t0, f(C1,C2))` holds.
void check_partner_shape(Run& run, Exponent bound, const std::function<bool(const Term&)>& hyp,
                         const std::function<bool(const Term&, const Term&)>& concl) {
  for (Exponent d : class_degrees(bound)) {
    const ClassData& cd = class_data(d);
    for (std::size_t i = 0; i < cd.terms.size(); ++i) {
      const Term& t0 = cd.terms[i];
      if (!hyp(t0)) continue;
      ++run.r.checked;
      for (std::size_t j : cd.groups[cd.group[i]]) {
        if (j == i) continue;
        ++run.r.nontrivial;
        if (!concl(t0, cd.terms[j])) run.fail({{"term", txt(t0)}, {"partner", txt(cd.terms[j])}});
      }
    }
  }
}

void appending_x_left(Run& run, std::uint64_t bound) {
  check_partner_shape(
      run, bound, [](const Term& t) { return t.left().is_leaf(); },
      [](const Term& t0, const Term& s) { return s.left().is_leaf() && e_equivalent(s.right(), t0.right()); });
}

void appending_x_right(Run& run, std::uint64_t bound) {
  check_partner_shape(
      run, bound, [](const Term& t) { return t.right().is_leaf(); },
      [](const Term& t0, const Term& s) { return s.right().is_leaf() && e_equivalent(s.left(), t0.left()); });
}

void appending_fxx_left(Run& run, std::uint64_t bound) {
  const Term fxx = f(x(), x());
  check_partner_shape(
      run, bound, [&](const Term& t) { return t.left() == fxx; },
      [&](const Term& t0, const Term& s) { return s.left() == fxx && e_equivalent(s.right(), t0.right()); });
}

void non_monic_condition(Run& run, std::uint64_t bound) {
  for_each_term(bound, 1, [&](const Term& t) {
    const Invariants inv = invariants(t);
    ++run.r.checked;
    if (inv.lead >= 2) {
      ++run.r.nontrivial;
      const Exponents23 e = factor_2_3(inv.dege);
      if (e.two < 1 || e.three < 2) {
        run.fail({{"term", txt(t)}, {"dege", inv.dege}, {"lead", inv.lead.get_str()}});
      }
    }
    return true;
  });
}

void hd_classification(Run& run, std::uint64_t bound) {
  for_each_term(bound, 1, [&](const Term& t) {
    ++run.r.checked;
    const bool byDefinition = hereditarily_disjoint_by_definition(t);
    const HdClassification c = classify_hereditarily_disjoint(t);
    const bool byCases = c.kind != HdCase::NotHD;
    if (byDefinition) ++run.r.nontrivial;
    json record{{"term", txt(t)}, {"definition", byDefinition}, {"case", to_string(c.kind)}};
    if (byDefinition != byCases) {
      run.fail(record);
    } else if (byCases) {
      const auto expectedOrde = static_cast<Exponent>(c.kind);
      const Exponent orde = dege_orde(t).orde;
      const std::size_t coreCount = t.is_leaf() ? 1 : cores(t).size();
      if (orde != expectedOrde || coreCount != 1) {
        record["orde"] = orde;
        record["cores"] = coreCount;
        run.fail(record);
      }
    }
    return true;
  });
}

void unique_development_iff_unique_core(Run& run, std::uint64_t bound) {
  for_each_term(bound, 1, [&](const Term& t) {
    if (t.is_leaf()) return true;
    ++run.r.checked;
    const std::size_t nc = cores(t).size();
    const std::size_t nd = developments(t).size();
    if (nc > 1) ++run.r.nontrivial;
    if ((nc == 1) != (nd == 1)) run.fail({{"term", txt(t)}, {"cores", nc}, {"developments", nd}});
    return true;
  });
}

void non_monic_multiple_cores(Run& run, std::uint64_t bound) {
  for_each_term(bound, 1, [&](const Term& t) {
    if (t.is_leaf()) return true;
    ++run.r.checked;
    const Integer lead = lead_fast(t);
    if (lead < 2) return true;
    ++run.r.nontrivial;
    const std::size_t nc = cores(t).size();
    if (nc < 2) run.fail({{"term", txt(t)}, {"lead", lead.get_str()}, {"cores", nc}});
    return true;
  });
}

void preserved_gap(Run& run, std::uint64_t bound) {
  for_each_term(bound, 1, [&](const Term& t) {
    if (t.is_leaf()) return true;
    const Nodes nodes = node_table(t);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].term.is_leaf()) continue;
      const std::size_t li = left_of(i);
      const std::size_t ri = right_of(nodes, i);
      if (nodes[li].contains_core == nodes[ri].contains_core) continue;
      const GapReport g = gap_report(t, nodes[i].path);
      const Path& other = g.core_on_right ? nodes[li].path : nodes[ri].path;
      ++run.r.checked;
      ++run.r.nontrivial;
      const Exponent walked = nodes[g.core_on_right ? li : ri].maxt;
      const Exponent expanded = maxt_exponent_by_expansion(t, other);
      if (nodes[0].dege - g.maxt_exponent != g.dgap || walked != g.maxt_exponent || expanded != g.maxt_exponent) {
        run.fail({{"term", txt(t)},
                  {"node", nodes[i].path.str()},
                  {"dgap", g.dgap},
                  {"maxt", g.maxt_exponent},
                  {"maxtWalk", walked},
                  {"maxtExpansion", expanded}});
      }
    }
    return true;
  });
}

// maxt must strictly decrease along the leaves x_1, x_2, ...
void check_chain(Run& run, const Term& t, const Nodes& nodes, std::vector<std::size_t> leaves) {
  if (leaves.size() < 2) return;
  ++run.r.checked;
  ++run.r.nontrivial;
  for (std::size_t k = 1; k < leaves.size(); ++k) {
    if (nodes[leaves[k - 1]].maxt <= nodes[leaves[k]].maxt) {
      json chain = json::array();
      for (std::size_t l : leaves) chain.push_back({{"leaf", nodes[l].path.str()}, {"maxt", nodes[l].maxt}});
      run.fail({{"term", txt(t)}, {"chain", chain}});
      return;
    }
  }
}

void maxt_left_x(Run& run, std::uint64_t bound) {
  for_each_term(bound, 1, [&](const Term& t) {
    if (t.is_leaf()) return true;
    const Nodes nodes = node_table(t);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].term.is_leaf() || !nodes[i].contains_core) continue;
      const std::size_t li = left_of(i);
      if (!nodes[li].term.is_leaf() || nodes[right_of(nodes, i)].term.is_leaf()) continue;
      // f(x_1, U), U != x; climb while the node is the right child of f(x, .).
      std::vector<std::size_t> leaves{li};
      Path cur = nodes[i].path;
      while (!cur.is_root() && cur.back() == Path::Move::Right) {
        const std::size_t p = index_of(nodes, cur.parent());
        if (!nodes[left_of(p)].term.is_leaf()) break;
        leaves.push_back(left_of(p));
        cur = nodes[p].path;
      }
      check_chain(run, t, nodes, leaves);
    }
    return true;
  });
}

void maxt_right_x(Run& run, std::uint64_t bound) {
  for_each_term(bound, 1, [&](const Term& t) {
    if (t.is_leaf()) return true;
    const Nodes nodes = node_table(t);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].term.is_leaf() || !nodes[i].contains_core) continue;
      const std::size_t ri = right_of(nodes, i);
      if (!nodes[ri].term.is_leaf() || nodes[left_of(i)].term.is_leaf()) continue;
      std::vector<std::size_t> leaves{ri};
      Path cur = nodes[i].path;
      while (!cur.is_root() && cur.back() == Path::Move::Left) {
        const std::size_t p = index_of(nodes, cur.parent());
        const std::size_t pr = right_of(nodes, p);
        if (!nodes[pr].term.is_leaf()) break;
        leaves.push_back(pr);
        cur = nodes[p].path;
      }
      check_chain(run, t, nodes, leaves);
    }
    return true;
  });
}

void maxt_mixed_x(Run& run, std::uint64_t bound) {
  for_each_term(bound, 1, [&](const Term& t) {
    if (t.is_leaf()) return true;
    const Nodes nodes = node_table(t);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      // f(f(x_1, B), x_2), B != x
      if (nodes[i].term.is_leaf() || !nodes[i].contains_core) continue;
      const std::size_t li = left_of(i);
      const std::size_t x2 = right_of(nodes, i);
      if (nodes[li].term.is_leaf() || !nodes[x2].term.is_leaf()) continue;
      const std::size_t x1 = left_of(li);
      const std::size_t b = right_of(nodes, li);
      if (!nodes[x1].term.is_leaf() || nodes[b].term.is_leaf()) continue;
      ++run.r.checked;
      ++run.r.nontrivial;
      if (nodes[x1].maxt <= nodes[x2].maxt || !nodes[b].contains_core) {
        run.fail({{"term", txt(t)},
                  {"node", nodes[i].path.str()},
                  {"maxtX1", nodes[x1].maxt},
                  {"maxtX2", nodes[x2].maxt},
                  {"coreInB", nodes[b].contains_core}});
      }
    }
    return true;
  });
}

using MemberIndex = std::unordered_map<Term, std::vector<std::size_t>>;

void add_member(MemberIndex& idx, const Term& key, std::size_t m) {
  auto& v = idx[key];
  if (v.empty() || v.back() != m) v.push_back(m);
}

void compare_below(Run& run, const ClassData& cd, std::size_t a, const std::vector<std::size_t>& others,
                   const Path& node, const char* kind) {
  for (std::size_t o : others) {
    ++run.r.checked;
    ++run.r.nontrivial;
    if (!(cd.values[a] < cd.values[o])) {
      run.fail({{"term", txt(cd.terms[a])}, {"node", node.str()}, {"other", txt(cd.terms[o])}, {"kind", kind}});
    }
  }
}

// A = f(..f(x',B)..) against f(..f(U,B)..), U != x, and f(..f(B,V)..).
void gleftx(Run& run, std::uint64_t bound) {
  for (Exponent d : class_degrees(bound)) {
    const ClassData& cd = class_data(d);
    const auto tables = tables_of(cd);
    MemberIndex bar, hat;
    for (std::size_t m = 0; m < tables.size(); ++m) {
      const Nodes& n = tables[m];
      for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i].term.is_leaf()) continue;
        const std::size_t li = left_of(i), ri = right_of(n, i);
        if (!n[li].term.is_leaf() && n[ri].contains_core) add_member(bar, n[ri].term, m);
        if (n[li].contains_core) add_member(hat, n[li].term, m);
      }
    }
    for (std::size_t a = 0; a < tables.size(); ++a) {
      const Nodes& n = tables[a];
      for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i].term.is_leaf()) continue;
        const std::size_t li = left_of(i), ri = right_of(n, i);
        if (!n[li].term.is_leaf() || !n[ri].contains_core) continue;
        if (ellipses_max(n, n[i].path) > n[li].maxt) continue;
        if (auto it = bar.find(n[ri].term); it != bar.end()) compare_below(run, cd, a, it->second, n[i].path, "left");
        if (auto it = hat.find(n[ri].term); it != hat.end()) compare_below(run, cd, a, it->second, n[i].path, "right");
      }
    }
  }
}

// A = f(..f(B,x')..) against f(..f(B,U)..), U != x.
void grightx(Run& run, std::uint64_t bound) {
  for (Exponent d : class_degrees(bound)) {
    const ClassData& cd = class_data(d);
    const auto tables = tables_of(cd);
    MemberIndex bar;
    for (std::size_t m = 0; m < tables.size(); ++m) {
      const Nodes& n = tables[m];
      for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i].term.is_leaf()) continue;
        const std::size_t li = left_of(i), ri = right_of(n, i);
        if (!n[ri].term.is_leaf() && n[li].contains_core) add_member(bar, n[li].term, m);
      }
    }
    for (std::size_t a = 0; a < tables.size(); ++a) {
      const Nodes& n = tables[a];
      for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i].term.is_leaf()) continue;
        const std::size_t li = left_of(i), ri = right_of(n, i);
        if (!n[ri].term.is_leaf() || !n[li].contains_core) continue;
        if (ellipses_max(n, n[i].path) > n[ri].maxt) continue;
        if (auto it = bar.find(n[li].term); it != bar.end()) compare_below(run, cd, a, it->second, n[i].path, "right");
      }
    }
  }
}

// Visits every node f(x',B) of every member of the classes up to bound whose
// B contains a core and whose ellipses stay at or below maxt(x').
void for_each_left_appendage(std::uint64_t bound,
                             const std::function<void(const ClassData&, std::size_t, const Nodes&, std::size_t)>& visit) {
  for (Exponent d : class_degrees(bound)) {
    const ClassData& cd = class_data(d);
    for (std::size_t a = 0; a < cd.terms.size(); ++a) {
      const Nodes n = node_table(cd.terms[a]);
      for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i].term.is_leaf()) continue;
        const std::size_t li = left_of(i), ri = right_of(n, i);
        if (!n[li].term.is_leaf() || !n[i].contains_core) continue;
        if (!n[ri].term.is_leaf() && !n[ri].contains_core) continue;
        if (ellipses_max(n, n[i].path) > n[li].maxt) continue;
        visit(cd, a, n, i);
      }
    }
  }
}

void e_isolated_left_appendage(Run& run, std::uint64_t bound) {
  for_each_left_appendage(bound, [&](const ClassData& cd, std::size_t a, const Nodes& n, std::size_t i) {
    const std::size_t ri = right_of(n, i);
    if (n[ri].term.is_leaf()) return;  // B = x holds no core
    const Term& A = cd.terms[a];
    const auto partners = cd.partners(a);
    if (is_e_isolated_wrt(n[ri].term, A, partners).status != WrtStatus::Yes) return;
    ++run.r.checked;
    if (partners.size() > 1 || developments(A).size() > 1) ++run.r.nontrivial;
    const WrtResult r = is_e_isolated_wrt(n[i].term, A, partners);
    if (r.status != WrtStatus::Yes) {
      json record{{"term", txt(A)}, {"node", n[i].path.str()}};
      if (r.equivalent) record["equivalent"] = txt(*r.equivalent);
      run.fail(record);
    }
  });
}

void x_left_appendage_separation(Run& run, std::uint64_t bound) {
  for_each_left_appendage(bound, [&](const ClassData& cd, std::size_t a, const Nodes& n, std::size_t i) {
    if (!is_comb(n[i].term)) return;
    const Term& A = cd.terms[a];
    const auto partners = cd.partners(a);
    ++run.r.checked;
    if (partners.size() > 1 || developments(A).size() > 1) ++run.r.nontrivial;
    const WrtResult r = is_e_isolated_wrt(n[i].term, A, partners);
    if (r.status != WrtStatus::Yes) {
      json record{{"term", txt(A)}, {"node", n[i].path.str()}};
      if (r.equivalent) record["equivalent"] = txt(*r.equivalent);
      run.fail(record);
    }
  });
}

void left_app_lex_min(Run& run, std::uint64_t bound) {
  for (Exponent d : class_degrees(bound)) {
    const ClassData& cd = class_data(d);
    const auto tables = tables_of(cd);
    // Members holding a core-carrying node of the given degree other than a comb.
    std::map<Exponent, std::vector<std::size_t>> byDegree;
    for (std::size_t m = 0; m < tables.size(); ++m) {
      for (const auto& node : tables[m]) {
        if (!node.contains_core || is_comb(node.term)) continue;
        auto& v = byDegree[node.dege];
        if (v.empty() || v.back() != m) v.push_back(m);
      }
    }
    for (std::size_t a = 0; a < tables.size(); ++a) {
      const Nodes& n = tables[a];
      for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i].term.is_leaf() || !n[i].contains_core || !is_comb(n[i].term)) continue;
        if (ellipses_max(n, n[i].path) > n[left_of(i)].maxt) continue;
        if (auto it = byDegree.find(n[i].dege); it != byDegree.end()) {
          compare_below(run, cd, a, it->second, n[i].path, "comb");
        }
      }
    }
  }
}

using Dense = std::vector<Integer>;

Dense dense(const Poly& p) {
  Dense v(p.degree() + 1);
  for (const auto& [e, c] : p.terms()) v[e] = c;
  return v;
}

// Sign of (s + c) - target in lex order; all three share the top degree.
int compare_sum(const Dense& s, const Dense& c, const Dense& target, Integer& scratch) {
  const std::size_t top = std::max(s.size(), c.size());
  if (top != target.size()) return top < target.size() ? -1 : 1;
  for (std::size_t k = top; k-- > 0;) {
    scratch = 0;
    if (k < s.size()) scratch += s[k];
    if (k < c.size()) scratch += c[k];
    if (int r = cmp(scratch, target[k]); r != 0) return r;
  }
  return 0;
}

void lexmin_construction(Run& run, std::uint64_t bound) {
  const auto catalog = shared_catalog(std::max<Exponent>(bound, kClassLimit));
  std::map<Exponent, std::vector<Dense>> squares, cubes;
  auto powers = [&](std::map<Exponent, std::vector<Dense>>& memo, Exponent d, unsigned k) -> const std::vector<Dense>& {
    if (auto it = memo.find(d); it != memo.end()) return it->second;
    std::vector<Dense> v;
    for (const auto& m : catalog->members(d)) v.push_back(dense(power(evaluate_exact(m.term), k)));
    return memo.emplace(d, std::move(v)).first->second;
  };
  Integer scratch;
  for (Exponent d : catalog->degrees()) {
    if (d == 1 || d > bound) continue;
    const Exponents23 e = factor_2_3(d);
    const Term L = build_lexmin(e.two, e.three);
    const Dense target = dense(evaluate_exact(L));
    for (Exponent dl : catalog->degrees()) {
      for (Exponent dr : catalog->degrees()) {
        if (std::max(2 * dl, 3 * dr) != d) continue;
        const auto& lefts = catalog->members(dl);
        const auto& rights = catalog->members(dr);
        const auto& sq = powers(squares, dl, 2);
        const auto& cu = powers(cubes, dr, 3);
        for (std::size_t a = 0; a < lefts.size(); ++a) {
          for (std::size_t b = 0; b < rights.size(); ++b) {
            ++run.r.checked;
            const int c = compare_sum(sq[a], cu[b], target, scratch);
            const bool self = lefts[a].term == L.left() && rights[b].term == L.right();
            if (!self) ++run.r.nontrivial;
            if (c < 0 || (c == 0 && !self)) {
              run.fail({{"degree", d},
                        {"lexmin", txt(L)},
                        {"term", txt(f(lefts[a].term, rights[b].term))},
                        {"relation", c < 0 ? "below" : "equal"}});
            }
          }
        }
      }
    }
  }
}

void lexico_min_appendage(Run& run, std::uint64_t bound) {
  const auto catalog = shared_catalog(kClassLimit);
  for (Exponent dF : catalog->degrees()) {
    if (dF < 3 || 4 * dF > bound) continue;
    const Exponents23 e = factor_2_3(dF);
    const Term F = build_lexmin(e.two, e.three);
    const Term Fx = f(F, x());
    const ClassData& cd = class_data(4 * dF);
    const Exponent limit = 3 + 2 * dF;
    for (Exponent dB : catalog->degrees()) {
      if (3 * dB > limit) break;
      for (const auto& member : catalog->members(dB)) {
        const Term t = f(Fx, member.term);
        const auto it = cd.index.find(t);
        if (it == cd.index.end()) throw std::logic_error("term missing from its degree class: " + txt(t));
        ++run.r.checked;
        if (maxt_exponent(t, Path("LR")) != limit) {
          run.fail({{"term", txt(t)}, {"reason", "maxt of the appended x is not 3 + 2 dege(F)"}});
        }
        for (std::size_t j : cd.groups[cd.group[it->second]]) {
          if (j == it->second) continue;
          ++run.r.nontrivial;
          const Term& s = cd.terms[j];
          if (!(s.left() == Fx && e_equivalent(s.right(), member.term))) {
            run.fail({{"term", txt(t)}, {"partner", txt(s)}});
          }
        }
      }
    }
  }
}

void e_equiv_condition(Run& run, std::uint64_t bound) {
  for (Exponent d : class_degrees(bound)) {
    const ClassData& cd = class_data(d);
    for (std::size_t i = 0; i < cd.terms.size(); ++i) {
      const Term& t = cd.terms[i];
      const Term &A = t.left(), &B = t.right();
      if (dege(A) > dege(B)) continue;
      ++run.r.checked;
      for (std::size_t j : cd.groups[cd.group[i]]) {
        if (j == i) continue;
        const Term& s = cd.terms[j];
        const Term &C = s.left(), &D = s.right();
        if (e_equivalent(B, D)) continue;
        ++run.r.nontrivial;
        if (!(dege(C) > dege(A) && lex_compare_terms(B, D) > 0 && dege(C) > dege(D))) {
          run.fail({{"term", txt(t)}, {"partner", txt(s)}});
        }
      }
    }
  }
}

// D = Y_{d_1}(...Y_{d_j}(V)...) -> V.
std::optional<Term> peel_Y_chain(Term D, const std::vector<unsigned>& chain) {
  for (unsigned d : chain) {
    if (D.is_leaf() || !(D.right() == build_B(d))) return std::nullopt;
    D = D.left();
  }
  return D;
}

void check_Y_chain(Run& run, const std::vector<unsigned>& chain) {
  // dege of Y_{d_1}...Y_{d_j}(U) once dege(U) <= 3^{d_j}.
  Exponent inner = pow3(chain.back() + 1);
  for (std::size_t k = chain.size() - 1; k-- > 0;) inner = std::max(2 * inner, pow3(chain[k] + 1));
  const Exponent top = 3 * inner;
  if (top > kClassLimit) throw std::logic_error("chain beyond the stored degree classes");
  const ClassData& cd = class_data(top);
  json chainJson = chain;
  for (std::size_t i = 0; i < cd.terms.size(); ++i) {
    const Term& t = cd.terms[i];
    const auto U = peel_Y_chain(t.right(), chain);
    if (!U || dege(*U) > pow3(chain.back()) || dege(t.left()) > dege(t.right())) continue;
    ++run.r.checked;
    for (std::size_t j : cd.groups[cd.group[i]]) {
      if (j == i) continue;
      ++run.r.nontrivial;
      const Term& s = cd.terms[j];
      const auto V = peel_Y_chain(s.right(), chain);
      if (!V || dege(*V) != dege(*U) || lex_compare_terms(*U, *V) < 0) {
        run.fail({{"term", txt(t)}, {"partner", txt(s)}, {"chain", chainJson}});
      }
    }
  }
}

void determination_of_dege(Run& run, std::uint64_t bound) {
  for (unsigned m = 1; m <= bound; ++m) check_Y_chain(run, {m});
}

void strictly_decreasing_chains(unsigned first, std::vector<unsigned>& prefix,
                                std::vector<std::vector<unsigned>>& out) {
  prefix.push_back(first);
  out.push_back(prefix);
  for (unsigned next = first - 1; next >= 1; --next) strictly_decreasing_chains(next, prefix, out);
  prefix.pop_back();
}

void determination_of_dege_gen(Run& run, std::uint64_t bound) {
  std::vector<std::vector<unsigned>> chains;
  std::vector<unsigned> prefix;
  for (unsigned d1 = 1; d1 <= bound; ++d1) strictly_decreasing_chains(d1, prefix, chains);
  for (const auto& chain : chains) check_Y_chain(run, chain);
}

// A = f(..f(E1,B)..) (or f(..f(B,E1)..) when !left) against A' with B in the
// same position and e(E1) <_L e(E2).
void lexico_min_preserved(Run& run, std::uint64_t bound, bool left) {
  struct Slot {
    std::size_t member;
    Term e;
  };
  for (Exponent d : class_degrees(bound)) {
    const ClassData& cd = class_data(d);
    const auto tables = tables_of(cd);
    std::unordered_map<Term, std::vector<Slot>> slots;
    for (std::size_t m = 0; m < tables.size(); ++m) {
      const Nodes& n = tables[m];
      for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i].term.is_leaf()) continue;
        const std::size_t bi = left ? right_of(n, i) : left_of(i);
        const std::size_t ei = left ? left_of(i) : right_of(n, i);
        if (n[bi].contains_core) slots[n[bi].term].push_back({m, n[ei].term});
      }
    }
    for (std::size_t a = 0; a < tables.size(); ++a) {
      const Nodes& n = tables[a];
      const auto cs = cores(cd.terms[a]);
      for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i].term.is_leaf()) continue;
        const std::size_t bi = left ? right_of(n, i) : left_of(i);
        const std::size_t ei = left ? left_of(i) : right_of(n, i);
        if (!holds_all_cores(cs, n[bi].path)) continue;
        if (min_leaf_maxt_under(n, n[ei].path) <= ellipses_max(n, n[i].path, true)) continue;
        const auto it = slots.find(n[bi].term);
        if (it == slots.end()) continue;
        for (const Slot& s : it->second) {
          if (lex_compare_terms(n[ei].term, s.e) >= 0) continue;
          ++run.r.checked;
          ++run.r.nontrivial;
          if (!(cd.values[a] < cd.values[s.member])) {
            run.fail({{"term", txt(cd.terms[a])},
                      {"node", n[i].path.str()},
                      {"other", txt(cd.terms[s.member])},
                      {"e2", txt(s.e)}});
          }
        }
      }
    }
  }
}

void lexico_min_preserved_left(Run& run, std::uint64_t bound) { lexico_min_preserved(run, bound, true); }
void lexico_min_preserved_right(Run& run, std::uint64_t bound) { lexico_min_preserved(run, bound, false); }

std::int64_t signed_gap(Exponent core, Exponent other, bool coreOnRight) {
  const auto c = static_cast<std::int64_t>(core), o = static_cast<std::int64_t>(other);
  return coreOnRight ? 3 * c - 2 * o : 2 * c - 3 * o;
}

void dgap_lower_bound(Run& run, std::uint64_t bound) {
  for (Exponent d : class_degrees(bound)) {
    const ClassData& cd = class_data(d);
    for (const auto& g : cd.groups) {
      if (g.size() < 2) continue;
      std::vector<Term> partners;
      for (std::size_t j : g) partners.push_back(cd.terms[j]);
      for (std::size_t a : g) {
        const Term& A = cd.terms[a];
        const Nodes n = node_table(A);
        const auto cs = cores(A);
        for (std::size_t i = 0; i < n.size(); ++i) {
          if (n[i].term.is_leaf()) continue;
          for (bool coreOnRight : {true, false}) {
            const std::size_t b0 = coreOnRight ? right_of(n, i) : left_of(i);
            const std::size_t e1 = coreOnRight ? left_of(i) : right_of(n, i);
            if (n[b0].term.is_leaf() || !holds_all_cores(cs, n[b0].path)) continue;
            if (is_e_isolated_wrt(n[b0].term, A, partners).status != WrtStatus::Yes) continue;
            if (min_leaf_maxt_under(n, n[e1].path) <= ellipses_max(n, n[i].path, true)) continue;
            const std::int64_t gap1 = signed_gap(n[b0].dege, n[e1].dege, coreOnRight);
            for (std::size_t o : g) {
              if (o == a) continue;
              const Nodes m = node_table(cd.terms[o]);
              for (std::size_t q = 0; q < m.size(); ++q) {
                if (m[q].term.is_leaf()) continue;
                for (bool right : {true, false}) {
                  const std::size_t b = right ? right_of(m, q) : left_of(q);
                  const std::size_t e2 = right ? left_of(q) : right_of(m, q);
                  if (!(m[b].term == n[b0].term) || !m[b].contains_core) continue;
                  ++run.r.checked;
                  ++run.r.nontrivial;
                  if (signed_gap(m[b].dege, m[e2].dege, right) < gap1) {
                    run.fail({{"term", txt(A)}, {"partner", txt(cd.terms[o])}, {"b0", n[b0].path.str()}});
                  }
                }
              }
            }
          }
        }
      }
    }
  }
}

struct Entry {
  ClaimInfo info;
  void (*check)(Run&, std::uint64_t);
};

const std::vector<Entry>& entries() {
  using B = BoundKind;
  static const std::vector<Entry> table = {
      {{"appending-x-left", "e(f(C1,C2)) = e(f(x,B)) implies C1 = x and e(C2) = e(B)", B::Degree, 54, 108, true},
       appending_x_left},
      {{"appending-x-right", "e(f(C1,C2)) = e(f(A,x)) implies e(C1) = e(A) and C2 = x", B::Degree, 54, 108, true},
       appending_x_right},
      {{"appending-fxx-left", "e(f(C1,C2)) = e(f(f(x,x),B)) implies C1 = f(x,x) and e(C2) = e(B)", B::Degree, 54,
        108, true},
       appending_fxx_left},
      {{"non-monic-condition", "lead(e(A)) >= 2 implies dege(A) = 2^p 3^q with p >= 1, q >= 2", B::Leaves, 12, 14,
        false},
       non_monic_condition},
      {{"hereditarily-disjoint-classification",
        "hereditarily disjoint iff x, f(x,U), f(U,x) with orde U >= 2, or f(f(x,x),U) with orde U >= 3 (U "
        "hereditarily disjoint); orde is 1..4 and the core is unique",
        B::Leaves, 10, 12, false},
       hd_classification},
      {{"unique-development-iff-unique-core", "exactly one development iff exactly one core", B::Leaves, 10, 12,
        false},
       unique_development_iff_unique_core},
      {{"non-monic-multiple-cores", "a non-monic image implies at least two cores", B::Leaves, 10, 12, false},
       non_monic_multiple_cores},
      {{"preserved-gap", "dege(A) - deg maxt(C) = dgap(C,B), with maxt read off the expansion", B::Leaves, 8, 9,
        false},
       preserved_gap},
      {{"gleftx",
        "A = f(..f(x',B)..) with the ellipses below maxt(x') is lex-below every f(..f(U,B)..), U != x, and "
        "f(..f(B,V)..) of the same degree",
        B::Degree, 108, 108, false},
       gleftx},
      {{"grightx",
        "A = f(..f(B,x')..) with the ellipses below maxt(x') is lex-below every f(..f(B,U)..), U != x, of the same "
        "degree",
        B::Degree, 108, 108, false},
       grightx},
      {{"maxt-left-x", "in f(x_n, ... f(x_1, U)), U != x, maxt(x_1) > ... > maxt(x_n)", B::Leaves, 10, 12, false},
       maxt_left_x},
      {{"maxt-right-x", "in f(...f(V, x_1)..., x_n), V != x, maxt(x_1) > ... > maxt(x_n)", B::Leaves, 10, 12,
        false},
       maxt_right_x},
      {{"maxt-mixed-x", "in f(f(x_1,B),x_2), B != x, maxt(x_1) > maxt(x_2) and B holds a core", B::Leaves, 10, 12,
        false},
       maxt_mixed_x},
      {{"e-isolated-left-appendage",
        "B e-isolated with respect to A = f(..f(x',B)..), ellipses below maxt(x'), implies f(x',B) is too",
        B::Degree, 108, 108, false},
       e_isolated_left_appendage},
      {{"x-left-appendage-separation",
        "f(x',B^(m)) is e-isolated with respect to A = f(..f(x',B^(m))..) when the ellipses stay below maxt(x')",
        B::Degree, 108, 108, false},
       x_left_appendage_separation},
      {{"left-app-lex-min",
        "A = f(..f(x',B^(m))..), ellipses below maxt(x'), is lex-below every f(..C..) of the same degree with "
        "dege(C) = 3^(m+1), C != f(x',B^(m))",
        B::Degree, 108, 108, false},
       left_app_lex_min},
      {{"lexmin-construction", "m v's around n u's around x is the unique lex-minimal term of degree 2^m 3^n",
        B::Degree, 200, 215, false},
       lexmin_construction},
      {{"lexico-min-appendage",
        "e(f(a,b)) = e(f(f(F,x),B)) with F lex-minimal and 3 dege(B) <= 3 + 2 dege(F) implies a = f(F,x) and e(b) "
        "= e(B)",
        B::Degree, 108, 108, true},
       lexico_min_appendage},
      {{"e-equiv-condition",
        "dege(A) <= dege(B), e(f(A,B)) = e(f(C,D)), e(B) != e(D) imply dege(C) > dege(A), e(B) >_L e(D), dege(C) > "
        "dege(D)",
        B::Degree, 108, 108, true},
       e_equiv_condition},
      {{"determination-of-dege",
        "e(f(C,D)) = e(f(A,f(E,B^(m)))) implies D = f(F,B^(m)), dege(F) = dege(E), e(E) >=_L e(F)", B::Index, 2, 2,
        true},
       determination_of_dege},
      {{"determination-of-dege-gen",
        "e(f(C,D)) = e(f(A,Y_d1...Y_dj(U))) implies D = Y_d1...Y_dj(V), dege(V) = dege(U), e(U) >=_L e(V)",
        B::Index, 2, 2, true},
       determination_of_dege_gen},
      {{"lexico-min-preserved-left",
        "A = f(..f(E1,B)..), B holding all cores, x's of E1 above the ellipses, e(E1) <_L e(E2) imply e(A) <_L "
        "e(f(..f(E2,B)..))",
        B::Degree, 81, 108, false},
       lexico_min_preserved_left},
      {{"lexico-min-preserved-right",
        "A = f(..f(B,E1)..), B holding all cores, x's of E1 above the ellipses, e(E1) <_L e(E2) imply e(A) <_L "
        "e(f(..f(B,E2)..))",
        B::Degree, 81, 108, false},
       lexico_min_preserved_right},
      {{"dgap-lower-bound",
        "for e-equivalent A, A' with B0 holding all cores and e-isolated with respect to A: dgap(E2,B0) >= "
        "dgap(E1,B0)",
        B::Degree, 108, 108, true},
       dgap_lower_bound},
  };
  return table;
}

std::string bound_text(BoundKind kind, std::uint64_t b) {
  switch (kind) {
    case BoundKind::Leaves: return "leaves<=" + std::to_string(b);
    case BoundKind::Degree: return "degree<=" + std::to_string(b);
    case BoundKind::Index: return "index<=" + std::to_string(b);
  }
  return std::to_string(b);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Infeasible: return "infeasible";
  }
  return "?";
}

const std::vector<ClaimInfo>& claim_registry() {
  static const std::vector<ClaimInfo> infos = [] {
    std::vector<ClaimInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

const ClaimInfo& claim_info(const std::string& id) {
  for (const auto& e : entries()) {
    if (e.info.id == id) return e.info;
  }
  throw UnknownClaim("unknown claim: " + id);
}

ClaimReport verify_claim(const std::string& id, std::optional<std::uint64_t> bound) {
  const Entry* entry = nullptr;
  for (const auto& e : entries()) {
    if (e.info.id == id) entry = &e;
  }
  if (!entry) throw UnknownClaim("unknown claim: " + id);
  const std::uint64_t b = bound.value_or(entry->info.default_bound);
  ClaimReport report;
  report.claim_id = id;
  report.bound = bound_text(entry->info.kind, b);
  if (b > entry->info.max_bound) {
    report.verdict = Verdict::Infeasible;
    report.note = "bound exceeds the feasible limit " + bound_text(entry->info.kind, entry->info.max_bound);
    return report;
  }
  Run run{report};
  entry->check(run, b);
  report.vacuous = entry->info.partner_quantified && report.nontrivial == 0;
  report.verdict = report.failure_count > 0 ? Verdict::Fail : Verdict::Pass;
  if (report.vacuous) report.note = "no e-equivalent partner other than the term itself exists within the bound";
  return report;
}

std::vector<ClaimReport> verify_all(unsigned workers) {
  const auto& reg = claim_registry();
  std::vector<ClaimReport> out(reg.size());
  // Build the shared degree classes once before fanning out.
  (void)shared_catalog(kClassLimit);
  detail::parallel_for(reg.size(), workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) out[i] = verify_claim(reg[i].id);
  });
  return out;
}

nlohmann::json to_json(const ClaimReport& r) {
  json j{{"claimId", r.claim_id},
         {"bound", r.bound},
         {"checked", r.checked},
         {"nontrivialInstances", r.nontrivial},
         {"vacuous", r.vacuous},
         {"verdict", to_string(r.verdict)},
         {"failureCount", r.failure_count},
         {"failures", r.failures}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::string to_text(const ClaimReport& r) {
  std::ostringstream out;
  out << r.claim_id << ": " << to_string(r.verdict) << (r.vacuous ? " (vacuous)" : "") << " [" << r.bound
      << "] checked=" << r.checked << " nontrivial=" << r.nontrivial << " failures=" << r.failure_count;
  if (!r.note.empty()) out << "; " << r.note;
  for (const auto& f : r.failures) out << "\n  " << f.dump();
  return out.str();
}

}  // namespace mil
