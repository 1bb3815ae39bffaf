#include <gtest/gtest.h>

#include <random>

#include "mil/eval.hpp"
#include "support/oracle.hpp"

using namespace mil;

namespace {

oracle::Dense to_dense(const Poly& p) {
  oracle::Dense d(p.degree() + 1, 0);
  for (const auto& [e, c] : p.terms()) d[e] = c;
  return d;
}

}  // namespace

TEST(Eval, ExampleImage) {
  const Poly e = evaluate_exact(parse_term("f(x,f(x,x))"));
  EXPECT_EQ(e, Poly::from_terms({{2, 1}, {6, 1}, {7, 3}, {8, 3}, {9, 1}}));
  EXPECT_EQ(lead_fast(parse_term("f(f(x,f(x,x)),f(f(x,x),x))")), 2);
}

TEST(Eval, FastInvariantsAgreeWithDenseExpansion) {
  for (const Term& t : enumerate_terms(8, 1)) {
    const auto pr = oracle::profile(oracle::expand(t));
    const DegreeOrder d = dege_orde(t);
    ASSERT_EQ(d.dege, pr.degree) << render(t);
    ASSERT_EQ(d.orde, pr.order) << render(t);
    ASSERT_EQ(lead_fast(t), pr.lead) << render(t);
    ASSERT_EQ(coeff_sum_fast(t), pr.coeff_sum) << render(t);
    const Invariants inv = invariants(t);
    EXPECT_EQ(inv.dege, pr.degree);
    EXPECT_EQ(inv.coeff_sum, pr.coeff_sum);
  }
}

TEST(Eval, ExactExpansionAgreesWithDense) {
  for (const Term& t : enumerate_terms(7, 1)) {
    ASSERT_EQ(to_dense(evaluate_exact(t)), oracle::expand(t)) << render(t);
  }
}

TEST(Eval, FingerprintAtFaithfulBase) {
  const Term t = parse_term("f(f(x,x),f(x,x))");
  const Integer s = coeff_sum_fast(t);
  const Fingerprint fp = fingerprint(t, s + 1);
  EXPECT_EQ(fp.value, oracle::dense_eval(oracle::expand(t), s + 1));
  EXPECT_EQ(fp.dege, 9u);
  EXPECT_EQ(fp.orde, 4u);
  EXPECT_THROW(fingerprint(t, s), UnfaithfulBase);
}

TEST(Eval, ComposeMatchesDirect) {
  std::mt19937_64 rng(3);
  const auto terms = enumerate_terms(7, 1);
  std::uniform_int_distribution<std::size_t> pick(0, terms.size() - 1);
  for (int k = 0; k < 300; ++k) {
    const Term& a = terms[pick(rng)];
    const Term& b = terms[pick(rng)];
    EXPECT_TRUE(compose(invariants(a), invariants(b)) == invariants(f(a, b)));
  }
}

TEST(Eval, EquivalenceAndLexOrderAgreeWithDense) {
  std::mt19937_64 rng(5);
  const auto terms = enumerate_terms(7, 1);
  std::uniform_int_distribution<std::size_t> pick(0, terms.size() - 1);
  for (int k = 0; k < 400; ++k) {
    const Term& a = terms[pick(rng)];
    const Term& b = terms[pick(rng)];
    const int lex = oracle::dense_lex(oracle::expand(a), oracle::expand(b));
    EXPECT_EQ(e_equivalent(a, b), lex == 0);
    const auto ord = lex_compare_terms(a, b);
    EXPECT_EQ(ord < 0, lex < 0) << render(a) << " vs " << render(b);
    EXPECT_EQ(ord > 0, lex > 0);
  }
}

TEST(Eval, GroupingSeparatesDistinctImages) {
  const auto terms = enumerate_terms(6, 1);
  const auto groups = group_by_e_image(terms);
  EXPECT_EQ(groups.size(), terms.size());
  // repeated input collapses
  std::vector<Term> twice{terms[5], terms[9], terms[5]};
  const auto g = group_by_e_image(twice);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], (std::vector<std::size_t>{0, 2}));
}

TEST(Eval, Isolation) {
  const IsolationResult r = is_e_isolated(parse_term("f(x,f(x,x))"));
  EXPECT_EQ(r.status, IsolationStatus::Isolated);
  const IsolationResult big = is_e_isolated(parse_term("f(f(f(x,f(x,f(x,x))),x),x)"), 10);
  EXPECT_EQ(big.status, IsolationStatus::Infeasible);
}

TEST(Eval, FaithfulnessOnRandomPairs) {
  std::mt19937_64 rng(1234);
  const auto terms = enumerate_terms(8, 1);
  std::uniform_int_distribution<std::size_t> pick(0, terms.size() - 1);
  for (int k = 0; k < 200; ++k) {
    const Term& a = terms[pick(rng)];
    const Term& b = terms[pick(rng)];
    const Integer base = std::max(coeff_sum_fast(a), coeff_sum_fast(b)) + 1;
    const Poly pa = evaluate_exact(a);
    const Poly pb = evaluate_exact(b);
    EXPECT_EQ(fingerprint_value(a, base) == fingerprint_value(b, base), pa == pb);
    EXPECT_EQ(fingerprint_value(a, base) < fingerprint_value(b, base), lex_compare(pa, pb) < 0);
  }
}

TEST(Eval, SmallExamples) {
  EXPECT_EQ(dege_orde(parse_term("f(f(x,x),x)")), (DegreeOrder{6, 3}));
  EXPECT_EQ(coeff_sum_fast(parse_term("f(x,f(x,x))")), 9);
  EXPECT_EQ(coeff_sum_fast(parse_term("f(f(x,x),x)")), 5);
  const Term t = parse_term("f(x,f(x,x))");
  EXPECT_EQ(fingerprint_value(t, 100), eval_at_base(evaluate_exact(t), 100));
  EXPECT_FALSE(e_equivalent(t, parse_term("f(f(x,x),x)")));
  EXPECT_TRUE(lex_compare_terms(parse_term("f(f(x,x),x)"), t) < 0);
  EXPECT_TRUE(lex_compare(evaluate_exact(parse_term("f(f(x,x),f(x,x))")), evaluate_exact(t)) > 0);
}
