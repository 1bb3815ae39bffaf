#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mil/term.hpp"
#include "support/oracle.hpp"

using namespace mil;

TEST(Term, ParseRenderRoundTrip) {
  const std::string s = "f(f(x,f(x,x)),f(f(x,x),x))";
  EXPECT_EQ(render(parse_term(s)), s);
  EXPECT_EQ(render(parse_term(" f( x , f(x,x) ) ")), "f(x,f(x,x))");
  EXPECT_EQ(render(parse_term("f(x1,f(x2,x1))", 2), 2), "f(x1,f(x2,x1))");
}

TEST(Term, ParseErrors) {
  EXPECT_THROW(parse_term("f(x,)"), ParseError);
  EXPECT_THROW(parse_term("g(x,x)"), ParseError);
  EXPECT_THROW(parse_term("f(x,x"), ParseError);
  EXPECT_THROW(parse_term("f(x,x))"), ParseError);
  EXPECT_THROW(parse_term("f(x1,x3)", 2), ParseError);
}

TEST(Term, VariablePositionsDepths) {
  const auto pos = variable_positions(parse_term("f(x1,f(x2,x1))", 2));
  ASSERT_EQ(pos.size(), 3u);
  EXPECT_EQ(pos[0], (VarPosition{1, 1}));
  EXPECT_EQ(pos[1], (VarPosition{2, 2}));
  EXPECT_EQ(pos[2], (VarPosition{1, 2}));
  EXPECT_EQ(variable_positions(x()), (std::vector<VarPosition>{{1, 0}}));
}

TEST(Term, CountsMatchCatalan) {
  for (std::size_t l = 1; l <= 9; ++l) {
    EXPECT_EQ(shapes(l).size(), oracle::catalan(l - 1)) << l;
    EXPECT_EQ(term_count(l, 1), oracle::catalan(l - 1));
    EXPECT_EQ(term_count(l, 2), oracle::catalan(l - 1) << l);
  }
  EXPECT_EQ(term_count_up_to(8, 1), 626u);
  EXPECT_EQ(term_count_up_to(12, 1), 82500u);
}

TEST(Term, EnumerationIsCanonicalAndDistinct) {
  for (VarIndex nv : {1u, 2u, 3u}) {
    const auto terms = enumerate_terms(nv == 1 ? 9 : 5, nv);
    EXPECT_EQ(terms.size(), term_count_up_to(nv == 1 ? 9 : 5, nv));
    std::set<std::string> seen;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      EXPECT_TRUE(seen.insert(render(terms[i], nv)).second);
      if (i > 0) EXPECT_EQ(canonical_compare(terms[i - 1], terms[i]), std::strong_ordering::less);
    }
  }
}

TEST(Term, ForEachTermStopsEarly) {
  std::size_t n = 0;
  for_each_term(10, 1, [&](const Term&) { return ++n < 7; });
  EXPECT_EQ(n, 7u);
}

TEST(Term, SubstitutionAndCollapse) {
  const Term t = parse_term("f(x1,f(x2,x1))", 2);
  EXPECT_EQ(render(substitute(t, 2, parse_term("f(x,x)"))), "f(x,f(f(x,x),x))");
  EXPECT_EQ(render(collapse(t)), "f(x,f(x,x))");
  EXPECT_EQ(render(substitute_all(t, {Term::var(2), Term::var(1)}), 2), "f(x2,f(x1,x2))");
}

TEST(Term, PathsAndReplacement) {
  const Term t = parse_term("f(x,f(f(x,x),x))");
  EXPECT_EQ(render(t.at(Path("RL"))), "f(x,x)");
  EXPECT_THROW((void)t.at(Path("LL")), std::out_of_range);
  EXPECT_EQ(render(replace_at(t, Path("RL"), x())), "f(x,f(x,x))");
  std::vector<std::string> paths;
  for_each_node(t, [&](const Path& p, const Term&) { paths.push_back(p.str()); });
  EXPECT_EQ(paths, (std::vector<std::string>{"", "L", "R", "RL", "RLL", "RLR", "RR"}));
}

TEST(Term, RandomRoundTripProperty) {
  std::mt19937_64 rng(20240601);
  const auto terms = enumerate_terms(9, 2);
  std::uniform_int_distribution<std::size_t> pick(0, terms.size() - 1);
  for (int k = 0; k < 500; ++k) {
    const Term& t = terms[pick(rng)];
    const Term back = parse_term(render(t, 2), 2);
    EXPECT_TRUE(back == t);
    EXPECT_EQ(back.hash(), t.hash());
    EXPECT_EQ(variable_positions(t).size(), t.leaf_count());
  }
}
