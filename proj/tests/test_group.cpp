#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ghw/catalog.hpp"
#include "ghw/construct.hpp"
#include "ghw/group.hpp"
#include "ghw/selector.hpp"
#include "oracles.hpp"

using namespace ghw;

namespace {

std::vector<Elem> cyclic_table(std::size_t n) {
  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = Elem((a + b) % n);
  return t;
}

std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

std::vector<Elem> as_vector(Subgroup const& s) { return {s.elements().begin(), s.elements().end()}; }

}  // namespace

TEST(Permutation, ComposesLeftFactorFirst) {
  auto p = Permutation::parse_cycles("(1 2)");
  auto q = Permutation::parse_cycles("(2 3)");
  EXPECT_EQ((p * q).to_cycles(), "(132)");
  EXPECT_EQ((q * p).to_cycles(), "(123)");
  EXPECT_EQ(Permutation::parse_cycles("()", 3).to_cycles(), "()");
  EXPECT_EQ(Permutation::parse_cycles("(1,2,3)"), Permutation::parse_cycles("(1 2 3)"));
}

TEST(Permutation, RejectsBadInput) {
  EXPECT_THROW(Permutation::parse_cycles("(1 1)"), Error);
  EXPECT_THROW(Permutation::parse_cycles("(1 2"), Error);
  EXPECT_THROW(Permutation::from_images({0, 0}), Error);
}

TEST(FiniteGroup, ValidatesTables) {
  EXPECT_EQ(FiniteGroup::from_table(cyclic_table(5), numbered(5), "C5", TableOrigin::untrusted).order(), 5u);

  auto not_latin = cyclic_table(3);
  not_latin[1] = 0;
  try {
    FiniteGroup::from_table(not_latin, numbered(3), "bad", TableOrigin::untrusted);
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidTable);
  }

  // A Latin square with identity that is not associative (order 5 loop).
  std::vector<Elem> loop{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  try {
    FiniteGroup::from_table(loop, numbered(5), "loop", TableOrigin::untrusted);
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidTable);
  }
}

TEST(FiniteGroup, UntrustedTablesAboveCapAreRejected) {
  try {
    FiniteGroup::from_table(cyclic_table(300), numbered(300), "C300", TableOrigin::untrusted);
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OrderCapExceeded);
  }
}

TEST(FiniteGroup, MovesIdentityToIndexZero) {
  // C3 written with the identity in the middle.
  std::vector<Elem> t{2, 0, 1, 0, 1, 2, 1, 2, 0};
  auto G = FiniteGroup::from_table(t, {"a", "e", "b"}, "C3", TableOrigin::untrusted);
  EXPECT_EQ(G.label(G.identity()), "e");
  for (Elem g = 0; g < 3; ++g) EXPECT_EQ(G.mul(0, g), g);
}

TEST(FiniteGroup, CayleyRoundTrip) {
  auto G = build_group("S4");
  std::stringstream ss;
  write_cayley_table(ss, G);
  auto H = parse_cayley_table(ss, "roundtrip");
  ASSERT_EQ(H.order(), 24u);
  for (Elem a = 0; a < 24; ++a)
    for (Elem b = 0; b < 24; ++b) EXPECT_EQ(H.mul(a, b), G.mul(a, b));
}

TEST(FiniteGroup, CayleyParseErrorsCarryLocation) {
  std::istringstream in("3\n0 1 2\n1 2 x\n2 0 1\n");
  try {
    parse_cayley_table(in, "t.txt");
    FAIL();
  } catch (ParseError const& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(FiniteGroup, GroupLawsOnCatalog) {
  std::mt19937 rng(7);
  for (auto const& name : catalog_names()) {
    auto G = build_group(name);
    std::uniform_int_distribution<Elem> pick(0, Elem(G.order() - 1));
    for (int i = 0; i < 200; ++i) {
      Elem a = pick(rng), b = pick(rng), c = pick(rng);
      ASSERT_EQ(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c))) << name;
      ASSERT_EQ(G.mul(a, G.inv(a)), G.identity());
      ASSERT_EQ(G.pow(a, G.element_order(a)), G.identity());
      ASSERT_EQ(G.pow(a, -1), G.inv(a));
      ASSERT_EQ(G.order() % G.element_order(a), 0u);
    }
  }
}

TEST(FiniteGroup, CatalogOrders) {
  std::map<std::string, std::size_t> expect{{"C1", 1},  {"C16", 16}, {"C2xC2xC2", 8}, {"S3", 6}, {"S4", 24},
                                            {"A4", 12}, {"A5", 60},  {"D4", 8},        {"D6", 12}, {"Q8", 8},
                                            {"C3xS3", 18}};
  for (auto const& [name, order] : expect) EXPECT_EQ(build_group(name).order(), order) << name;
  EXPECT_EQ(catalog_names().size(), 28u);
}

TEST(Lattice, MatchesSubsetOracle) {
  for (auto const& name : catalog_names()) {
    auto G = build_group(name);
    if (G.order() > 12) continue;
    std::set<std::vector<Elem>> mine;
    for (auto const& S : all_subgroups(G)) mine.insert(as_vector(S));
    EXPECT_EQ(mine, oracle::subgroups_by_subsets(G)) << name;
  }
}

TEST(Lattice, KnownCounts) {
  std::map<std::string, std::size_t> expect{{"S3", 6},  {"S4", 30}, {"A4", 10}, {"A5", 59},
                                            {"Q8", 6},  {"D4", 10}, {"C2xC2xC2", 16}, {"C12", 6}};
  for (auto const& [name, count] : expect) EXPECT_EQ(all_subgroups(build_group(name)).size(), count) << name;
}

TEST(Lattice, CanonicalOrderIsStable) {
  auto L1 = all_subgroups(build_group("S4"));
  auto L2 = all_subgroups(build_group("S4"));
  ASSERT_EQ(L1.size(), L2.size());
  for (std::size_t i = 0; i < L1.size(); ++i) EXPECT_EQ(as_vector(L1[i]), as_vector(L2[i]));
  for (std::size_t i = 1; i < L1.size(); ++i) EXPECT_LE(L1[i - 1].order(), L1[i].order());
}

TEST(Subgroups, StructuralOperators) {
  auto S4 = build_group("S4");
  EXPECT_EQ(commutator_subgroup(S4.whole()).order(), 12u);
  EXPECT_EQ(commutator_subgroup(build_group("A4").whole()).order(), 4u);
  EXPECT_EQ(commutator_subgroup(build_group("A5").whole()).order(), 60u);
  EXPECT_EQ(center(build_group("Q8")).order(), 2u);
  EXPECT_EQ(center(build_group("D6")).order(), 2u);
  EXPECT_EQ(center(build_group("S3")).order(), 1u);
  EXPECT_EQ(exponent(S4.whole()), 12u);
  EXPECT_EQ(exponent(build_group("Q8").whole()), 4u);
  EXPECT_EQ(exponent(build_group("A5").whole()), 30u);

  auto S3 = build_group("S3");
  auto T = select_subgroup(S3, "order:3:0");
  auto two = select_subgroup(S3, "order:2:0");
  EXPECT_TRUE(is_normal(T, S3.whole()));
  EXPECT_FALSE(is_normal(two, S3.whole()));
  EXPECT_EQ(normalizer(S3, two).order(), 2u);
  EXPECT_EQ(normalizer(S3, T).order(), 6u);
  EXPECT_EQ(centralizer(S3, T).order(), 3u);
  EXPECT_THROW(is_normal(S3.whole(), T), Error);

  auto C8 = build_group("C8");
  auto A = select_subgroup(C8, "order:4:0");
  EXPECT_EQ(power_subgroup(A, 4).order(), 1u);
  EXPECT_EQ(power_subgroup(C8.whole(), 4).order(), 2u);
  EXPECT_EQ(verbal_subgroup(S4.whole(), 2).order(), 12u);
}

TEST(Subgroups, SelectorsRoundTrip) {
  auto G = build_group("D4");
  auto L = all_subgroups(G);
  for (auto const& S : L) EXPECT_EQ(select_subgroup(G, selector_name(L, S)), S);
  EXPECT_EQ(select_subgroup(G, "gen:r").order(), 4u);
  EXPECT_EQ(select_subgroup(G, "gen:r,s").order(), 8u);
  EXPECT_EQ(select_subgroup(G, "gen:#1").order(), 4u);
  EXPECT_TRUE(select_subgroup(G, "trivial").is_trivial());
  EXPECT_THROW(select_subgroup(G, "gen:nope"), Error);
  EXPECT_THROW(select_subgroup(G, "order:3:0"), Error);
}

TEST(GcdGroup, DefinitionMatchesSylowAndOracle) {
  for (auto const& name : catalog_names()) {
    auto G = build_group(name);
    if (G.order() > 12) continue;
    for (Count n = 0; n <= 30; ++n)
      EXPECT_EQ(gcd_group(G, n, GcdMethod::both), oracle::gcd_by_subsets(G, n)) << name << " n=" << n;
  }
}

TEST(GcdGroup, Values) {
  auto A5 = build_group("A5");
  EXPECT_EQ(gcd_group(A5, 0), 60u);
  EXPECT_EQ(gcd_group(A5, 15, GcdMethod::definition), 15u);
  EXPECT_EQ(gcd_group(A5, 4, GcdMethod::definition), 4u);
  EXPECT_EQ(gcd_group(build_group("S3"), 2), 2u);
  EXPECT_EQ(gcd_group(build_group("C8"), 12), 4u);
}

TEST(Catalog, Filters) {
  EXPECT_TRUE(resolve_catalog_filter("").empty());
  EXPECT_EQ(resolve_catalog_filter("all").size(), 28u);
  auto small = resolve_catalog_filter("order<=6");
  EXPECT_EQ(small, (std::vector<std::string>{"C1", "C2", "C3", "C4", "C5", "C6", "C2xC2", "S3"}));
  EXPECT_EQ(resolve_catalog_filter("S3,perm:(1 2 3);(1 2)").size(), 2u);
  EXPECT_THROW(resolve_catalog_filter("X9"), Error);
}
