#include <gtest/gtest.h>

#include "ghw/construct.hpp"
#include "ghw/presentation.hpp"

using namespace ghw;

namespace {

Word x(std::int64_t e = 1) { return Word::generator(0, e); }
Word y(std::int64_t e = 1) { return Word::generator(1, e); }

Presentation two(std::vector<Word> rels) { return Presentation({"x", "y"}, std::move(rels)); }

}  // namespace

TEST(Word, FreeReduction) {
  EXPECT_TRUE((x() * x(-1)).empty());
  EXPECT_EQ((x(2) * x(3)).syllables().size(), 1u);
  EXPECT_EQ((x() * y() * y(-1) * x()).syllables()[0].exp, 2);
  Word w = x() * y(2) * x(-1);
  EXPECT_TRUE((w * w.inverse()).empty());
  EXPECT_EQ(w.pow(3).exponent_sums(2), (std::vector<std::int64_t>{0, 6}));
  EXPECT_EQ(w.max_generator(), 1u);
  EXPECT_FALSE(Word().max_generator());
}

TEST(Word, EvaluatesInGroups) {
  auto S3 = build_group("S3");
  auto a = *S3.find_label("(12)"), b = *S3.find_label("(23)");
  std::vector<Elem> imgs{a, b};
  EXPECT_EQ(word_eval(x() * y(), imgs, S3), S3.mul(a, b));
  EXPECT_EQ(word_eval(x(2), imgs, S3), S3.identity());
  EXPECT_EQ(word_eval((x() * y()).pow(3), imgs, S3), S3.identity());
}

TEST(Presentation, ShapeInference) {
  auto P = Presentation::free_product_of_cyclics({3, 5});
  EXPECT_EQ(P.shape().kind, ShapeTag::Kind::free_product_of_cyclics);
  EXPECT_EQ(P.shape().nontrivial_factors(), 2u);
  EXPECT_EQ(two({}).shape().kind, ShapeTag::Kind::free);
  EXPECT_EQ(two({x() * y()}).shape().kind, ShapeTag::Kind::generic);
}

TEST(Abelianization, Examples) {
  auto P = Presentation::free_product_of_cyclics({3, 5});
  auto inv = abelianization(P);
  EXPECT_EQ(inv.free_rank, 0u);
  EXPECT_EQ(exp_of_invariants(inv), 15u);

  auto free_part = abelianization(two({x(2)}));
  EXPECT_EQ(free_part.free_rank, 1u);
  EXPECT_EQ(exp_of_invariants(free_part), 0u);

  EXPECT_EQ(exp_of_invariants(abelianization(two({x(2) * y(3)}))), 0u);
  EXPECT_EQ(exp_of_invariants(abelianization(two({x(4), y(6)}))), 12u);
  EXPECT_EQ(exp_of_invariants(abelianization(two({x(2), y(2), (x() * y()).pow(3)}))), 2u);  // S3
  EXPECT_EQ(exp_of_invariants(abelianization(Presentation({"x"}, {}))), 0u);
  EXPECT_EQ(exp_of_invariants(abelianization(Presentation({"x"}, {x(1)}))), 1u);
}

TEST(Abelianization, ModuloSubgroups) {
  auto P = Presentation::free_product_of_cyclics({3, 5});
  std::vector<Word> wx{x()}, wall{x(), y()};
  EXPECT_EQ(exp_mod_words(P, wx), 5u);
  EXPECT_EQ(exp_mod_words(P, wall), 1u);
}

TEST(Indexation, Validation) {
  auto P = Presentation::free_product_of_cyclics({3, 5});
  EXPECT_TRUE(validate_indexation(P, Indexation(15, {10, 3})).empty());
  EXPECT_TRUE(validate_indexation(P, Indexation(15, {5, 3})).empty());
  EXPECT_TRUE(validate_indexation(P, Indexation(15, {10, 6})).empty());

  auto bad_rel = validate_indexation(P, Indexation(15, {1, 3}));
  ASSERT_FALSE(bad_rel.empty());
  EXPECT_EQ(bad_rel[0].kind, IndexationViolation::Kind::relator_degree);

  auto arity = validate_indexation(P, Indexation(15, {5}));
  ASSERT_FALSE(arity.empty());
  EXPECT_EQ(arity[0].kind, IndexationViolation::Kind::wrong_arity);

  auto onto = validate_indexation(P, Indexation(15, {5, 0}));
  ASSERT_FALSE(onto.empty());
  EXPECT_EQ(onto.back().kind, IndexationViolation::Kind::not_surjective);

  // deg 15 on the single relator x^3 y^5: 30 + 15 = 45, divisible by 15.
  EXPECT_TRUE(validate_indexation(two({x(3) * y(5)}), Indexation(15, {10, 3})).empty());
}

TEST(Indexation, DegreeOneWordAndK) {
  auto P = Presentation::free_product_of_cyclics({3, 5});
  for (auto idx : {Indexation(15, {10, 3}), Indexation(15, {5, 3}), Indexation(15, {10, 6})}) {
    Word f1 = degree_one_word(idx);
    EXPECT_EQ(mod_floor(deg_of_word(idx, f1), 15), 1);
  }
  Indexation idx(15, {10, 3});
  EXPECT_EQ(deg_subgroup_index(idx, SubgroupSpec::whole(P)), 1u);
  SubgroupSpec wx;
  wx.gen_words = {x()};
  EXPECT_EQ(deg_subgroup_index(idx, wx), 5u);
  SubgroupSpec wy;
  wy.gen_words = {y()};
  EXPECT_EQ(deg_subgroup_index(idx, wy), 3u);
  EXPECT_EQ(deg_subgroup_index(Indexation(15, {10, 6}), wy), 3u);
  EXPECT_THROW(degree_one_word(Indexation(15, {5, 0})), Error);
  EXPECT_TRUE(degree_one_word(Indexation(1, {0, 0})).empty());
}

TEST(Center, InferredForFreeProducts) {
  auto P = Presentation::free_product_of_cyclics({3, 5});
  auto c = effective_center(P, SubgroupSpec::whole(P));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->kind, CenterKnowledge::Kind::trivial);
  auto single = Presentation::free_product_of_cyclics({4});
  EXPECT_FALSE(effective_center(single, SubgroupSpec::whole(single)));
}

TEST(Center, MarginalDegreeCheck) {
  auto P = Presentation::free_product_of_cyclics({3, 5});
  SubgroupSpec wx;
  wx.gen_words = {x()};
  wx.known_order = 3;
  wx.center = CenterKnowledge{CenterKnowledge::Kind::whole, 3, std::nullopt};
  EXPECT_EQ(marginal_degree_check(P, wx, Indexation(15, {10, 3})), MarginalCheck::violation);
  EXPECT_EQ(marginal_degree_check(P, wx, Indexation(5, {0, 1})), MarginalCheck::ok);
  SubgroupSpec plain;
  plain.gen_words = {x()};
  EXPECT_EQ(marginal_degree_check(P, plain, Indexation(15, {10, 3})), MarginalCheck::not_applicable);
}
