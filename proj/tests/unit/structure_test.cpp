#include <gtest/gtest.h>

#include <random>

#include "mil/catalog.hpp"
#include "mil/structure.hpp"
#include "support/oracle.hpp"

using namespace mil;

namespace {

const char* kTwoDev = "f(f(x,f(x,x)),f(f(x,x),x))";

}  // namespace

TEST(Structure, Factor23) {
  EXPECT_EQ(factor_2_3(36), (Exponents23{2, 2}));
  EXPECT_EQ(factor_2_3(1), (Exponents23{0, 0}));
  EXPECT_THROW(factor_2_3(10), std::domain_error);
  EXPECT_EQ(stage_count(parse_term("f(x,f(x,x))")), 2u);
  EXPECT_EQ(stage_count(x()), 0u);
}

TEST(Structure, CoresOfExamples) {
  const Term t = parse_term("f(x,f(f(x,f(x,x)),f(f(x,x),x)))");
  EXPECT_EQ(cores(t).size(), 2u);
  EXPECT_EQ(lead_fast(t), 8);
  const auto c = cores(parse_term("f(f(x,x),f(x,x))"));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].str(), "R");
  EXPECT_THROW((void)cores(x()), std::invalid_argument);
}

TEST(Structure, DevelopmentsOfExamples) {
  const auto one = developments(parse_term("f(x,f(x,x))"));
  ASSERT_EQ(one.size(), 1u);
  ASSERT_EQ(one[0].stages.size(), 2u);
  EXPECT_EQ(render(one[0].stages[0]), "f(x,x)");
  EXPECT_EQ(render(one[0].stages[1]), "f(x,f(x,x))");
  EXPECT_EQ(developments(parse_term(kTwoDev)).size(), 2u);
  EXPECT_FALSE(stage_term(parse_term(kTwoDev), 2).has_value());
  EXPECT_EQ(render(*stage_term(parse_term(kTwoDev), 1)), "f(x,x)");
  EXPECT_THROW((void)developments(x()), std::invalid_argument);
}

TEST(Structure, MaxtWalkMatchesExpansion) {
  for (const Term& t : enumerate_terms(7, 1)) {
    for_each_node(t, [&](const Path& p, const Term&) {
      if (p.is_root()) return;
      EXPECT_EQ(maxt_exponent(t, p), maxt_exponent_by_expansion(t, p)) << render(t) << " @" << p.str();
    });
  }
}

TEST(Structure, CoresAreTopDegreeContributors) {
  // a core f(x,x) reaches dege(t): doubling it raises the top coefficient
  for (const Term& t : enumerate_terms(8, 1)) {
    if (t.is_leaf()) continue;
    const Exponent d = dege_orde(t).dege;
    std::size_t expected = 0;
    for_each_node(t, [&](const Path& p, const Term& s) {
      if (!s.is_leaf() && s.left().is_leaf() && s.right().is_leaf() && maxt_exponent_by_expansion(t, p) == d) {
        ++expected;
      }
    });
    EXPECT_EQ(cores(t).size(), expected) << render(t);
  }
}

TEST(Structure, NodeTableIsPreOrder) {
  const Term t = parse_term(kTwoDev);
  const auto table = node_table(t);
  std::vector<std::string> paths;
  for_each_node(t, [&](const Path& p, const Term&) { paths.push_back(p.str()); });
  ASSERT_EQ(table.size(), paths.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    EXPECT_EQ(table[i].path.str(), paths[i]);
    EXPECT_EQ(table[i].dege, dege_orde(table[i].term).dege);
    EXPECT_EQ(table[i].contains_core, contains_core(t, table[i].path));
  }
}

TEST(Structure, GapReports) {
  const GapReport a = gap_report(parse_term("f(x,f(x,x))"), Path::root());
  EXPECT_EQ(a.dgap, 7u);
  EXPECT_EQ(a.maxt_exponent, 2u);
  EXPECT_TRUE(a.core_on_right);
  const GapReport b = gap_report(parse_term("f(f(x,x),x)"), Path::root());
  EXPECT_EQ(b.dgap, 3u);
  EXPECT_EQ(b.maxt_exponent, 3u);
  EXPECT_FALSE(b.core_on_right);
  EXPECT_EQ(b.pi1, 1u);
  EXPECT_EQ(b.pi2, 0u);
  EXPECT_THROW((void)gap_report(parse_term("f(f(x,x),f(x,x))"), Path("L")), std::invalid_argument);
}

TEST(Structure, HereditarilyDisjointExamples) {
  EXPECT_EQ(classify_hereditarily_disjoint(x()).kind, HdCase::Case1);
  const auto c2 = classify_hereditarily_disjoint(parse_term("f(x,f(x,x))"));
  EXPECT_EQ(c2.kind, HdCase::Case2);
  ASSERT_TRUE(c2.u.has_value());
  EXPECT_EQ(render(*c2.u), "f(x,x)");
  EXPECT_EQ(classify_hereditarily_disjoint(parse_term("f(f(x,x),f(x,x))")).kind, HdCase::NotHD);
  EXPECT_FALSE(is_disjoint(parse_term("f(f(x,x),f(x,x))")));
  EXPECT_STREQ(to_string(HdCase::Case3), "case3");
}

TEST(Structure, HdClassificationMatchesDefinition) {
  for (const Term& t : enumerate_terms(9, 1)) {
    const bool byDef = hereditarily_disjoint_by_definition(t);
    EXPECT_EQ(classify_hereditarily_disjoint(t).kind != HdCase::NotHD, byDef) << render(t);
  }
}

TEST(Structure, Builders) {
  EXPECT_TRUE(build_B(0) == x());
  EXPECT_EQ(render(build_B(2)), "f(x,f(x,x))");
  const Term b3 = build_B(3);
  EXPECT_EQ(dege_orde(b3).dege, 27u);
  EXPECT_EQ(coeff_sum_fast(b3), oracle::profile(oracle::expand(b3)).coeff_sum);
  EXPECT_EQ(render(build_lexmin(2, 2)), "f(f(f(x,f(x,x)),x),x)");
  EXPECT_EQ(render(build_lexmin(1, 1)), "f(f(x,x),x)");
  EXPECT_THROW((void)build_lexmin(1, 0), std::invalid_argument);
  EXPECT_EQ(render(apply_Y_chain(x(), {2, 1})), "f(f(x,f(x,x)),f(x,f(x,x)))");
}

TEST(Structure, LexminIsMinimalInItsClass) {
  for (unsigned m = 0; m <= 2; ++m) {
    for (unsigned n = 1; n <= 2; ++n) {
      const Term t = build_lexmin(m, n);
      const Exponent d = dege_orde(t).dege;
      shared_catalog(d)->for_each_member(d, [&](const CatalogEntry& e) {
        if (!(e.term == t)) {
          EXPECT_LT(oracle::dense_lex(oracle::expand(t), oracle::expand(e.term)), 0) << render(e.term);
        }
        return true;
      });
      EXPECT_EQ(is_lex_minimal(t), std::optional<bool>(true));
    }
  }
  EXPECT_EQ(is_lex_minimal(parse_term("f(x,f(x,x))")), std::optional<bool>(true));
  EXPECT_EQ(is_lex_minimal(parse_term("f(f(x,x),f(x,x))")), std::optional<bool>(false));
}

TEST(Structure, IsolationWithRespectTo) {
  const auto ce = is_e_isolated_wrt(parse_term("f(x,f(x,x))"), parse_term(kTwoDev));
  EXPECT_EQ(ce.status, WrtStatus::Counterexample);
  ASSERT_TRUE(ce.development.has_value());
  EXPECT_EQ(is_e_isolated_wrt(build_B(1), build_B(3)).status, WrtStatus::Yes);
  EXPECT_EQ(is_e_isolated_wrt(parse_term("f(x,x)"), parse_term(kTwoDev)).status, WrtStatus::Yes);
  EXPECT_THROW((void)is_e_isolated_wrt(parse_term("f(f(x,x),x)"), build_B(3)), std::invalid_argument);
}

TEST(Structure, SupplementingOnForcedPair) {
  // a = aBar forces equal images; E1 and B0 are the children of the root
  const Term a = parse_term("f(x,f(x,f(x,x)))");
  const SupplementReport r = find_supplementing(a, a, Path("L"), Path("R"));
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.dgap, 3u * 9 - 2u * 1);
  const SupplementReport bad = find_supplementing(a, a, Path("L"), Path("RL"));
  EXPECT_FALSE(bad.violations.empty());
}

TEST(Structure, AnalyzeReport) {
  const auto j = analyze(parse_term("f(x,f(x,x))"));
  EXPECT_EQ(j["dege"], 9);
  EXPECT_EQ(j["orde"], 2);
  EXPECT_EQ(j["cores"].size(), 1u);
  EXPECT_EQ(j["developments"], 1);
  EXPECT_EQ(j["hereditarilyDisjoint"], "case2");
}
