#include <gtest/gtest.h>

#include <random>

#include "mil/poly.hpp"
#include "support/oracle.hpp"

using namespace mil;

namespace {

Poly random_poly(std::mt19937_64& rng, unsigned maxDeg) {
  std::uniform_int_distribution<unsigned> deg(0, maxDeg);
  std::uniform_int_distribution<unsigned> coef(0, 9);
  std::vector<Poly::Monomial> m;
  for (unsigned k = 0, n = deg(rng); k <= n; ++k) {
    if (unsigned c = coef(rng)) m.emplace_back(k, c);
  }
  if (m.empty()) m.emplace_back(0, 1);
  return Poly::from_terms(std::move(m));
}

oracle::Dense to_dense(const Poly& p) {
  oracle::Dense d(p.degree() + 1, 0);
  for (const auto& [e, c] : p.terms()) d[e] = c;
  return d;
}

}  // namespace

TEST(Poly, FromTermsNormalizes) {
  const Poly p = Poly::from_terms({{3, 2}, {1, 1}, {3, 5}, {0, 0}});
  ASSERT_EQ(p.term_count(), 2u);
  EXPECT_EQ(p.coefficient(3), 7);
  EXPECT_EQ(p.order(), 1u);
  EXPECT_EQ(p.degree(), 3u);
  EXPECT_THROW(Poly::from_terms({{1, -1}}), std::invalid_argument);
}

TEST(Poly, ProfileOfExample) {
  // x^2 + (x^2 + x^3)^3 = x^2 + x^6 + 3x^7 + 3x^8 + x^9
  const Poly inner = Poly::monomial(2) + Poly::monomial(3);
  const Poly p = Poly::monomial(2) + power(inner, 3);
  EXPECT_EQ(p, Poly::from_terms({{2, 1}, {6, 1}, {7, 3}, {8, 3}, {9, 1}}));
  const PolyProfile pr = profile(p);
  EXPECT_EQ(pr.degree, 9u);
  EXPECT_EQ(pr.order, 2u);
  EXPECT_EQ(pr.lead, 1);
  EXPECT_EQ(pr.coeff_sum, 9);
}

TEST(Poly, MultiplyMatchesDense) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const Poly p = random_poly(rng, 30);
    const Poly q = random_poly(rng, 30);
    EXPECT_EQ(to_dense(multiply(p, q)), oracle::dense_mul(to_dense(p), to_dense(q)));
    EXPECT_EQ(to_dense(p + q), oracle::dense_add(to_dense(p), to_dense(q)));
  }
}

TEST(Poly, LexCompareAndEvalMatchDense) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    const Poly p = random_poly(rng, 12);
    const Poly q = random_poly(rng, 12);
    const int lex = oracle::dense_lex(to_dense(p), to_dense(q));
    const auto ord = lex_compare(p, q);
    EXPECT_EQ(ord < 0, lex < 0);
    EXPECT_EQ(ord == 0, lex == 0);
    EXPECT_EQ(eval_at_base(p, 17), oracle::dense_eval(to_dense(p), 17));
  }
}

TEST(Poly, ExpansionCapRefuses) {
  const Poly p = power(Poly::x() + Poly::one(), 50);
  EXPECT_THROW(multiply(p, p, 100), ExpansionCapExceeded);
}

TEST(Poly, SubtractDominated) {
  const Poly p = Poly::from_terms({{1, 3}, {2, 1}});
  EXPECT_EQ(subtract_dominated(p, Poly::monomial(1, 2)), Poly::from_terms({{1, 1}, {2, 1}}));
  EXPECT_THROW(subtract_dominated(p, Poly::monomial(5)), std::domain_error);
}

TEST(Poly, JsonRoundTrip) {
  const Poly p = Poly::from_terms({{0, 1}, {40, mpz_class("123456789012345678901234567890")}});
  EXPECT_EQ(poly_from_json(to_json(p)), p);
}
