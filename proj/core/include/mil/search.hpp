#pragma once

// Exhaustive identity search over all terms up to a leaf bound.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mil/eval.hpp"
#include "mil/term.hpp"

namespace mil {

inline constexpr std::uint64_t kDefaultSearchBudget = 5'000'000;

struct SearchOptions {
  unsigned workers = 1;
  std::size_t expansion_cap = kDefaultExpansionCap;
  std::uint64_t max_terms = kDefaultSearchBudget;  // enumerated-term budget
  std::optional<std::string> cache_path;
};

enum class ConfirmMethod { Expansion, ThreeBases };

struct Identity {
  Term a;  // a precedes b in canonical order
  Term b;
  ConfirmMethod method = ConfirmMethod::Expansion;
};

struct SearchReport {
  std::size_t max_leaves = 0;
  std::size_t covered_leaves = 0;  // every term with at most this many leaves was examined
  VarIndex num_vars = 1;
  std::uint64_t terms_total = 0;
  std::uint64_t terms_covered = 0;
  bool complete = false;
  Integer base;  // run base: max coeffSum over covered terms, plus one
  std::uint64_t candidate_groups = 0;
  std::vector<Identity> identities;
  // Candidate pairs that could not be decided within the expansion cap (multi-variable only).
  std::vector<std::pair<Term, Term>> unresolved;
};

// Groups terms by (dege, orde, coeffSum, lead, residues) and, for several
// variables, by the same data for each substitution x_k -> f(x,x), others -> x.
// Candidate groups are confirmed exactly: by expansion when within the cap,
// otherwise by fingerprints at three faithful bases. Output is independent of
// the worker count.
SearchReport find_identities(std::size_t maxLeaves, VarIndex numVars, const SearchOptions& options = {});

struct GroupVerdict {
  std::vector<Identity> identities;
  std::vector<std::pair<Term, Term>> unresolved;
};

// The confirmation step on its own: decides every pair of `group` exactly.
// `base` must exceed the coefficient sum of each (collapsed) member.
GroupVerdict confirm_group(const std::vector<Term>& group, VarIndex numVars, const Integer& base,
                           const SearchOptions& options = {});

std::string to_text(const SearchReport& report);
nlohmann::json to_json(const SearchReport& report);

}  // namespace mil
