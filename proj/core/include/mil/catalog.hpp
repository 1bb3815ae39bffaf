#pragma once

// Terms grouped by dege. Degree classes are what the isolation and lex-order
// questions quantify over; they are far smaller than leaf-count slices of the
// same reach (dege >= leaf count).

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "mil/eval.hpp"
#include "mil/term.hpp"

namespace mil {

struct CatalogEntry {
  Term term;
  Invariants inv;
};

// True for 1 and every 2^a 3^b with b >= 1; these are the only values dege takes.
bool is_reachable_degree(Exponent d);

class DegreeCatalog {
 public:
  static constexpr std::size_t kDefaultMaterializeLimit = std::size_t{1} << 17;

  // Counts every class up to maxDegree and stores the members of classes
  // holding at most materializeLimit terms whose child classes are stored too.
  explicit DegreeCatalog(Exponent maxDegree, std::size_t materializeLimit = kDefaultMaterializeLimit);

  [[nodiscard]] Exponent max_degree() const noexcept { return maxDegree_; }
  // Reachable degrees up to max_degree(), ascending.
  [[nodiscard]] const std::vector<Exponent>& degrees() const noexcept { return degrees_; }

  [[nodiscard]] Integer count(Exponent d) const;
  [[nodiscard]] bool materialized(Exponent d) const;
  // Throws std::out_of_range when the class is not stored.
  [[nodiscard]] const std::vector<CatalogEntry>& members(Exponent d) const;
  // Whether for_each_pair can stream class d (all child classes stored).
  [[nodiscard]] bool streamable(Exponent d) const;

  // Every member f(A,B) of class d as its two children, in catalog order:
  // dege(A) ascending, dege(B) ascending, then member order of each child class.
  // Class 1 (the bare x) has no pairs. The visitor returns false to stop.
  void for_each_pair(Exponent d, const std::function<bool(const CatalogEntry&, const CatalogEntry&)>& visit) const;

  // Members of class d in catalog order, streamed when not stored.
  void for_each_member(Exponent d, const std::function<bool(const CatalogEntry&)>& visit) const;

 private:
  struct ChildDegrees {
    Exponent left;
    Exponent right;
  };
  [[nodiscard]] std::vector<ChildDegrees> child_degrees(Exponent d) const;

  Exponent maxDegree_;
  std::vector<Exponent> degrees_;
  std::map<Exponent, Integer> counts_;
  std::map<Exponent, std::vector<CatalogEntry>> members_;
};

// Process-wide catalog covering at least maxDegree; grown on demand.
std::shared_ptr<const DegreeCatalog> shared_catalog(Exponent maxDegree);

struct EquivalentsResult {
  bool feasible = false;
  Integer candidates;       // size of the degree class
  std::vector<Term> terms;  // every term e-equivalent to the input (itself included), catalog order
};

// All terms with the same e-image, found by scanning the degree class.
// Not feasible when the class exceeds the budget.
EquivalentsResult e_equivalents(const Term& t, std::uint64_t budget = kDefaultIsolationBudget);

}  // namespace mil
