#pragma once

// Multi-variable e-images and the variable-separation construction that
// reduces multi-variable identities to single-variable ones.

#include <map>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "mil/poly.hpp"
#include "mil/term.hpp"

namespace mil {

using ExponentVector = std::vector<Exponent>;

// Sparse polynomial in x1..xn with positive coefficients.
class MPoly {
 public:
  explicit MPoly(std::size_t numVars) : numVars_(numVars) {}

  static MPoly variable(std::size_t numVars, VarIndex k);

  [[nodiscard]] std::size_t num_vars() const noexcept { return numVars_; }
  [[nodiscard]] std::size_t term_count() const noexcept { return terms_.size(); }
  [[nodiscard]] const std::map<ExponentVector, Integer>& terms() const noexcept { return terms_; }
  [[nodiscard]] Integer coefficient(const ExponentVector& e) const;

  void add_term(const ExponentVector& e, const Integer& c);

  friend bool operator==(const MPoly&, const MPoly&) = default;

 private:
  std::size_t numVars_;
  std::map<ExponentVector, Integer> terms_;
};

MPoly operator+(const MPoly& p, const MPoly& q);
MPoly multiply(const MPoly& p, const MPoly& q, std::size_t cap = kDefaultExpansionCap);

// e extended to x1..xn. Throws std::invalid_argument when t uses a variable beyond numVars.
MPoly mv_evaluate(const Term& t, std::size_t numVars, std::size_t cap = kDefaultExpansionCap);
bool mv_e_equivalent(const Term& g, const Term& h, std::size_t numVars, std::size_t cap = kDefaultExpansionCap);

// Sends every variable to x: sums exponent vectors.
Poly collapse(const MPoly& p);

// [[[e1,...,en], "coef"], ...] in descending exponent-vector order.
nlohmann::json to_json(const MPoly& p);

struct SeparationWitness {
  bool same_structure_same_vars = false;
  std::size_t position = 0;  // 1-based leaf position j of the first differing variable
  VarIndex var = 0;          // k: the variable g carries at position j
  Term g_image;              // g with x_k -> f(x,x), every other variable -> x
  Term h_image;
};

// g and h must collapse to the same one-variable term (std::invalid_argument otherwise).
// When their variable tuples differ, applies the separating substitution; the two
// images are then structurally distinct.
SeparationWitness separation_witness(const Term& g, const Term& h);

}  // namespace mil
