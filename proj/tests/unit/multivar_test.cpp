#include <gtest/gtest.h>

#include <random>

#include "mil/eval.hpp"
#include "mil/multivar.hpp"

using namespace mil;

TEST(Multivar, ImageOfExample) {
  // x1^2 + (x2^2 + x1^3)^3
  const MPoly p = mv_evaluate(parse_term("f(x1,f(x2,x1))", 2), 2);
  EXPECT_EQ(p.term_count(), 5u);
  EXPECT_EQ(p.coefficient({2, 0}), 1);
  EXPECT_EQ(p.coefficient({0, 6}), 1);
  EXPECT_EQ(p.coefficient({3, 4}), 3);
  EXPECT_EQ(p.coefficient({6, 2}), 3);
  EXPECT_EQ(p.coefficient({9, 0}), 1);
  EXPECT_THROW((void)mv_evaluate(parse_term("f(x1,x3)", 3), 2), std::invalid_argument);
}

TEST(Multivar, CommutativityFails) {
  EXPECT_FALSE(mv_e_equivalent(parse_term("f(x1,x2)", 2), parse_term("f(x2,x1)", 2), 2));
}

TEST(Multivar, MixedTermIsIsolatedAmongSmallTerms) {
  const Term g = parse_term("f(f(x1,f(x2,x3)),x2)", 3);
  for (const Term& h : enumerate_terms(g.leaf_count(), 3)) {
    if (h == g) continue;
    EXPECT_FALSE(mv_e_equivalent(g, h, 3)) << render(h, 3);
  }
}

TEST(Multivar, CollapseCommutesWithEvaluation) {
  std::mt19937_64 rng(42);
  const auto terms = enumerate_terms(6, 3);
  std::uniform_int_distribution<std::size_t> pick(0, terms.size() - 1);
  for (int k = 0; k < 200; ++k) {
    const Term& t = terms[pick(rng)];
    EXPECT_EQ(collapse(mv_evaluate(t, 3)), evaluate_exact(collapse(t))) << render(t, 3);
  }
}

TEST(Multivar, SeparationWitness) {
  const Term g = parse_term("f(x1,x2)", 2);
  const Term h = parse_term("f(x2,x1)", 2);
  const SeparationWitness w = separation_witness(g, h);
  EXPECT_FALSE(w.same_structure_same_vars);
  EXPECT_EQ(w.position, 1u);
  EXPECT_EQ(w.var, 1u);
  EXPECT_EQ(render(w.g_image), "f(f(x,x),x)");
  EXPECT_EQ(render(w.h_image), "f(x,f(x,x))");
  EXPECT_FALSE(e_equivalent(w.g_image, w.h_image));
  EXPECT_TRUE(separation_witness(g, g).same_structure_same_vars);
  EXPECT_THROW((void)separation_witness(g, parse_term("f(x1,f(x1,x2))", 2)), std::invalid_argument);
}

TEST(Multivar, SeparationOnRandomPairs) {
  std::mt19937_64 rng(99);
  const auto shapes6 = shapes(6);
  std::uniform_int_distribution<std::size_t> shape(0, shapes6.size() - 1);
  std::uniform_int_distribution<VarIndex> var(1, 3);
  auto relabel = [&](const Term& s) {
    std::vector<Term> leaves;
    std::function<Term(const Term&)> go = [&](const Term& t) -> Term {
      if (t.is_leaf()) return Term::var(var(rng));
      return f(go(t.left()), go(t.right()));
    };
    return go(s);
  };
  for (int k = 0; k < 100; ++k) {
    const Term& s = shapes6[shape(rng)];
    const Term g = relabel(s);
    const Term h = relabel(s);
    const SeparationWitness w = separation_witness(g, h);
    if (g == h) {
      EXPECT_TRUE(w.same_structure_same_vars);
    } else {
      EXPECT_FALSE(w.same_structure_same_vars);
      EXPECT_FALSE(w.g_image == w.h_image);
    }
  }
}

TEST(Multivar, JsonIsDescending) {
  const auto j = to_json(mv_evaluate(parse_term("f(x1,x2)", 2), 2));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0][0], (std::vector<int>{2, 0}));
  EXPECT_EQ(j[1][0], (std::vector<int>{0, 3}));
}
