#pragma once

// The evaluation map e(x) = x, e(f(A,B)) = e(A)^2 + e(B)^3 and the exact
// decision procedures built on it.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mil/poly.hpp"
#include "mil/term.hpp"

namespace mil {

// Expands e(t). Every leaf is read as x, so multi-variable terms are collapsed first.
Poly evaluate_exact(const Term& t, std::size_t cap = kDefaultExpansionCap);

struct DegreeOrder {
  Exponent dege;
  Exponent orde;
  friend bool operator==(const DegreeOrder&, const DegreeOrder&) = default;
};

// dege(f(A,B)) = max(2 dege A, 3 dege B), orde likewise with min; exact
// because coefficients are positive and never cancel.
DegreeOrder dege_orde(const Term& t);
// s(x) = 1, s(f(A,B)) = s(A)^2 + s(B)^3, i.e. e(t)(1).
Integer coeff_sum_fast(const Term& t);
// Leading coefficient of e(t) without expansion.
Integer lead_fast(const Term& t);

// Everything the search keys on, composable bottom-up.
struct Invariants {
  Exponent dege = 1;
  Exponent orde = 1;
  Integer lead = 1;
  Integer coeff_sum = 1;
  // e(t) evaluated at two fixed points modulo 2^61 - 1. A mismatch proves the
  // images differ; a match proves nothing.
  std::array<std::uint64_t, 2> residues{};

  static Invariants of_x();
  friend bool operator==(const Invariants&, const Invariants&);
  friend std::strong_ordering operator<=>(const Invariants&, const Invariants&);
};

Invariants compose(const Invariants& left, const Invariants& right);
Invariants invariants(const Term& t);

class UnfaithfulBase : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Fingerprint {
  Integer base;
  Integer value;
  Exponent dege = 0;
  Exponent orde = 0;
  Integer coeff_sum;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

// value = e(t)(base) via v(x) = base, v(f(A,B)) = v(A)^2 + v(B)^3.
// With base > coeffSum every coefficient is a single base digit, so equal
// values at a shared base mean equal polynomials. Throws UnfaithfulBase otherwise.
Fingerprint fingerprint(const Term& t, const Integer& base);
// The raw recursion, without the faithfulness check.
Integer fingerprint_value(const Term& t, const Integer& base);

// Exact: compares invariants, then fingerprints at max(coeffSum) + 1.
bool e_equivalent(const Term& a, const Term& b);

// Lex order of e(a) against e(b): degree, then lead, then fingerprint value at
// a shared faithful base.
std::strong_ordering lex_compare_terms(const Term& a, const Term& b);

// Partitions terms into e-equivalence classes. Classes are listed in order of
// their first member; members keep input order.
std::vector<std::vector<std::size_t>> group_by_e_image(const std::vector<Term>& terms);

inline constexpr std::uint64_t kDefaultIsolationBudget = std::uint64_t{1} << 20;

enum class IsolationStatus { Isolated, Witness, Infeasible };

struct IsolationResult {
  IsolationStatus status = IsolationStatus::Infeasible;
  std::optional<Term> witness;
  Integer candidates;  // size of the same-degree class that was (or would be) searched
};

// Searches every term of the same dege for an e-equivalent partner.
IsolationResult is_e_isolated(const Term& t, std::uint64_t budget = kDefaultIsolationBudget);

}  // namespace mil
