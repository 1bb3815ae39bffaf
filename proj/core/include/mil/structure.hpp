#pragma once

// Cores, developments, degree gaps and the constructions built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mil/eval.hpp"
#include "mil/term.hpp"

namespace mil {

// d = 2^two * 3^three.
struct Exponents23 {
  unsigned two = 0;
  unsigned three = 0;
  friend bool operator==(const Exponents23&, const Exponents23&) = default;
};
// Throws std::domain_error when d has a prime factor other than 2 and 3.
Exponents23 factor_2_3(Exponent d);

// Number of development stages: two + three of dege(t). Zero for x.
std::size_t stage_count(const Term& t);

// Highest exponent of e(t) that a monomial carrying a factor from the node at
// `node` can reach: start from dege(node) and, walking to the root, add
// dege(current) when current is a left child and 2 dege(current) when it is a right child.
Exponent maxt_exponent(const Term& t, const Path& node);
// The same quantity read off an expansion: deg(e_t[node -> 2 e(node)] - e(t)).
Exponent maxt_exponent_by_expansion(const Term& t, const Path& node, std::size_t cap = kDefaultExpansionCap);

// Occurrences of f(x,x) whose top monomial reaches dege(t), in pre-order.
// Throws std::invalid_argument for t = x.
std::vector<Path> cores(const Term& t);
// Whether the node at `node` contains at least one core of t.
bool contains_core(const Term& t, const Path& node);

struct NodeInfo {
  Path path;
  Term term;
  Exponent dege = 0;
  Exponent maxt = 0;
  bool contains_core = false;
};
// Every node of t in pre-order.
std::vector<NodeInfo> node_table(const Term& t);

struct Development {
  std::vector<Term> stages;  // stages[0] = f(x,x), back() = the developed term
  Path core_path;
};

// Every development, built from the staged definition: start at f(x,x); the
// next stage is f(A,C) with 3 dege(C) <= 2 dege(A) or f(C,A) with
// 2 dege(C) <= 3 dege(A). Distinct stage sequences only. Throws for t = x.
std::vector<Development> developments(const Term& t);

// Stage n (1-based) when all developments agree there; nullopt when they do not.
// Throws std::out_of_range unless 1 <= n <= stage_count(t).
std::optional<Term> stage_term(const Term& t, std::size_t n);

struct GapReport {
  Path node;            // f(C,B) or f(B,C)
  bool core_on_right = true;
  Exponent dgap = 0;    // 3 dege(B) - 2 dege(C), or 2 dege(B) - 3 dege(C)
  Exponent maxt_exponent = 0;
  Exponent dege = 0;
  unsigned pi1 = 0;     // 1 when the core side is on the left
  unsigned pi2 = 0;     // 1 when the core side is on the right
  Exponents23 core_side;  // m, n: dege of the core-side child
  Exponents23 other;      // i, j: dege of the other child
  Exponents23 whole;      // p, q: dege(t)
};

// The node must have exactly one child containing a core of t
// (std::invalid_argument otherwise).
GapReport gap_report(const Term& t, const Path& node);

enum class HdCase { NotHD, Case1, Case2, Case3, Case4 };
const char* to_string(HdCase c);

struct HdClassification {
  HdCase kind = HdCase::NotHD;
  std::optional<Term> u;
};

// f(A,B) is disjoint when 2 dege(A) < 3 orde(B) or 3 dege(B) < 2 orde(A).
bool is_disjoint(const Term& t);
// x, or disjoint at every stage of the development about some core.
bool hereditarily_disjoint_by_definition(const Term& t);
// x; f(x,U); f(U,x) with orde(U) >= 2; f(f(x,x),U) with orde(U) >= 3; U hereditarily disjoint.
HdClassification classify_hereditarily_disjoint(const Term& t);

// B^(0) = x, B^(n+1) = f(x, B^(n)).
Term build_B(unsigned n);
// m applications of v(A) = f(A,x) around n applications of u(A) = f(x,A) to x.
// Throws std::invalid_argument for n = 0.
Term build_lexmin(unsigned m, unsigned n);
// Y_{d_1}(Y_{d_2}(...Y_{d_j}(seed))), Y_d(A) = f(A, B^(d)); indices strictly decreasing, all >= 1.
Term apply_Y_chain(const Term& seed, const std::vector<unsigned>& indices);

enum class WrtStatus { Yes, Counterexample, Infeasible };

struct WrtResult {
  WrtStatus status = WrtStatus::Infeasible;
  std::optional<Term> equivalent;          // the term whose development disagrees
  std::optional<Development> development;  // the disagreeing development
  Integer candidates;
};

// Whether every development of every term e-equivalent to a has b at stage
// stage_count(b). Throws std::invalid_argument unless b is a stage term of
// some development of a.
WrtResult is_e_isolated_wrt(const Term& b, const Term& a, std::uint64_t budget = kDefaultIsolationBudget);
// Same, against a known list of the terms e-equivalent to a.
WrtResult is_e_isolated_wrt(const Term& b, const Term& a, const std::vector<Term>& equivalents);

struct Supplement {
  unsigned k1 = 0;
  unsigned k2 = 0;
  Term c;
  bool excluded = false;  // (k1,k2) = (pi1,pi2)
};

struct SupplementReport {
  std::vector<std::string> violations;  // unmet preconditions; no search when nonempty
  unsigned pi1 = 0;
  unsigned pi2 = 0;
  Exponent dgap = 0;
  std::vector<Supplement> supplements;
};

// Subterms C in developments of aBar whose stage has dege 2^{m+k1} 3^{n+k2}
// and whose gap to the previous stage equals dgap(E1,B0).
SupplementReport find_supplementing(const Term& a, const Term& aBar, const Path& e1Path, const Path& b0Path,
                                    bool keepExcluded = false, std::uint64_t budget = kDefaultIsolationBudget);

// Lex-minimal among all terms of its degree; nullopt when the class exceeds the budget.
std::optional<bool> is_lex_minimal(const Term& t, std::uint64_t budget = kDefaultIsolationBudget);

// { term, dege, orde, lead, cores, developments, hereditarilyDisjoint, lexmin? }
nlohmann::json analyze(const Term& t, std::uint64_t budget = kDefaultIsolationBudget);

}  // namespace mil
