#include <gtest/gtest.h>

#include <map>

#include "mil/catalog.hpp"

using namespace mil;

TEST(Catalog, ReachableDegrees) {
  EXPECT_TRUE(is_reachable_degree(1));
  EXPECT_TRUE(is_reachable_degree(3));
  EXPECT_TRUE(is_reachable_degree(108));
  EXPECT_FALSE(is_reachable_degree(2));
  EXPECT_FALSE(is_reachable_degree(4));
  EXPECT_FALSE(is_reachable_degree(5));
  EXPECT_FALSE(is_reachable_degree(0));
}

TEST(Catalog, ClassesMatchEnumeration) {
  // every term of degree <= 27 has at most 27 leaves; count classes by brute force up to 10 leaves
  // and compare on degrees whose members all fit within that leaf bound (dege >= leaves).
  std::map<Exponent, std::size_t> counts;
  for (const Term& t : enumerate_terms(10, 1)) ++counts[dege_orde(t).dege];
  DegreeCatalog cat(10);
  for (Exponent d : cat.degrees()) {
    EXPECT_EQ(cat.count(d), counts[d]) << d;
    std::size_t n = 0;
    cat.for_each_member(d, [&](const CatalogEntry& e) {
      EXPECT_EQ(dege_orde(e.term).dege, d);
      EXPECT_TRUE(e.inv == invariants(e.term));
      ++n;
      return true;
    });
    EXPECT_EQ(n, counts[d]);
  }
}

TEST(Catalog, SharedCatalogSizes) {
  auto cat = shared_catalog(108);
  EXPECT_TRUE(cat->materialized(108));
  EXPECT_EQ(cat->count(108), 59621);
  Integer total = 0;
  for (Exponent d : cat->degrees()) total += cat->count(d);
  EXPECT_EQ(total, 65202);
}

TEST(Catalog, EquivalentsOfIsolatedTerm) {
  const EquivalentsResult r = e_equivalents(parse_term("f(f(x,x),f(x,x))"));
  ASSERT_TRUE(r.feasible);
  ASSERT_EQ(r.terms.size(), 1u);
  EXPECT_EQ(render(r.terms[0]), "f(f(x,x),f(x,x))");
}
