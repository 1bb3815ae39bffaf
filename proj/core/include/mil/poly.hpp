#pragma once

// Sparse univariate polynomials with positive arbitrary-precision coefficients.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

namespace mil {

using Integer = mpz_class;
using Exponent = std::uint64_t;

inline constexpr std::size_t kDefaultExpansionCap = 2'000'000;

class ExpansionCapExceeded : public std::runtime_error {
 public:
  ExpansionCapExceeded(std::size_t estimate, std::size_t cap);
  [[nodiscard]] std::size_t estimate() const noexcept { return estimate_; }
  [[nodiscard]] std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t estimate_;
  std::size_t cap_;
};

class Poly {
 public:
  using Monomial = std::pair<Exponent, Integer>;

  // The zero polynomial (empty map).
  Poly() = default;

  static Poly monomial(Exponent e, Integer c = 1);
  static Poly one() { return monomial(0, 1); }
  static Poly x() { return monomial(1, 1); }

  // Sorts, merges equal exponents and drops zeros. Negative coefficients are rejected.
  static Poly from_terms(std::vector<Monomial> terms);

  [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::size_t term_count() const noexcept { return terms_.size(); }
  // Ascending by exponent; every coefficient is positive.
  [[nodiscard]] const std::vector<Monomial>& terms() const noexcept { return terms_; }
  [[nodiscard]] Integer coefficient(Exponent e) const;
  [[nodiscard]] Exponent degree() const;
  [[nodiscard]] Exponent order() const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  std::vector<Monomial> terms_;
};

Poly operator+(const Poly& p, const Poly& q);

// Schoolbook product. The estimate is |p|*|q| term products; above `cap` the
// product is refused with ExpansionCapExceeded.
Poly multiply(const Poly& p, const Poly& q, std::size_t cap = kDefaultExpansionCap);
Poly power(const Poly& p, unsigned k, std::size_t cap = kDefaultExpansionCap);
Poly scale(const Poly& p, const Integer& c);
// p - q, which must stay coefficientwise nonnegative.
Poly subtract_dominated(const Poly& p, const Poly& q);

struct PolyProfile {
  Exponent order;
  Exponent degree;
  Integer lead;
  Integer coeff_sum;
};

PolyProfile profile(const Poly& p);

// Compares from the top exponent down; the first differing coefficient decides.
std::strong_ordering lex_compare(const Poly& p, const Poly& q);

// Horner over the sorted exponents.
Integer eval_at_base(const Poly& p, const Integer& base);

// "a_k*x^k + ..." with descending exponents.
std::string to_debug_string(const Poly& p);
// [[exponent, "coefficient"], ...] with descending exponents.
nlohmann::json to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j);

}  // namespace mil
