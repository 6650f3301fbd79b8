#include <gtest/gtest.h>

#include "ghw/pres_parser.hpp"

using namespace ghw;

namespace {

ParseError parse_error(std::string const& text) {
  try {
    parse_presentation(text);
  } catch (ParseError const& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return ParseError("", 0, 0, "");
}

}  // namespace

TEST(Parser, FullBundle) {
  auto b = parse_presentation(
      "# a comment\n"
      "gens x y\n"
      "\n"
      "rel x^3\n"
      "rel y^5\n"
      "deg 15: x=10 y=3\n"
      "W: x ; order=3 ; center=whole\n"
      "group A5\n");
  EXPECT_EQ(b.pres.num_gens(), 2u);
  EXPECT_EQ(b.pres.relators().size(), 2u);
  ASSERT_TRUE(b.idx);
  EXPECT_EQ(b.idx->n, 15u);
  EXPECT_EQ(b.idx->degrees, (std::vector<std::int64_t>{10, 3}));
  EXPECT_TRUE(b.W_declared);
  EXPECT_EQ(b.W.known_order, 3u);
  ASSERT_TRUE(b.W.center);
  EXPECT_EQ(b.W.center->kind, CenterKnowledge::Kind::whole);
  ASSERT_TRUE(b.group);
  EXPECT_EQ(to_string(*b.group), "A5");
}

TEST(Parser, DefaultsWToWholeGroup) {
  auto b = parse_presentation("gens a b\nrel a b a^-1 b^-1\n");
  EXPECT_FALSE(b.W_declared);
  EXPECT_EQ(b.W.gen_words.size(), 2u);
  EXPECT_FALSE(b.idx);
  EXPECT_EQ(b.pres.relators()[0].syllables().size(), 4u);
}

TEST(Parser, CyclicCenterWithGenerator) {
  auto b = parse_presentation("gens x y\nrel x^2 y^-2\nW: x, y ; center=cyclic:2:x^2\n");
  ASSERT_TRUE(b.W.center);
  EXPECT_EQ(b.W.center->kind, CenterKnowledge::Kind::cyclic);
  EXPECT_EQ(b.W.center->order, 2u);
  ASSERT_TRUE(b.W.center->generator);
  EXPECT_EQ(b.W.gen_words.size(), 2u);
}

TEST(Parser, UndeclaredGeneratorNamesLine) {
  auto e = parse_error("gens x y\nrel x^3\nrel y^5 z\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 9u);
  EXPECT_NE(std::string(e.what()).find("'z'"), std::string::npos);
}

TEST(Parser, Rejections) {
  EXPECT_EQ(parse_error("rel x\n").line(), 1u);                              // no gens
  EXPECT_EQ(parse_error("gens x\nfoo bar\n").line(), 2u);                    // unknown directive
  EXPECT_EQ(parse_error("gens x\nrel x^\n").line(), 2u);                     // bad exponent
  EXPECT_EQ(parse_error("gens x y\nrel x^3\ndeg 15: x=10\n").line(), 3u);    // missing degree
  EXPECT_EQ(parse_error("gens x y\nrel x^3\ndeg 15: x=1 y=0\n").line(), 3u); // invalid indexation
  EXPECT_EQ(parse_error("gens x x\n").line(), 1u);                           // duplicate
  EXPECT_EQ(parse_error("gens x\nW: x ; order=0\n").line(), 2u);
  EXPECT_EQ(parse_error("gens x\nW: x ; center=huge\n").line(), 2u);
  EXPECT_EQ(parse_error("gens x\ngroup Z9\n").line(), 2u);
}

TEST(Parser, DegreeExampleValidates) {
  auto b = parse_presentation("gens x y\nrel x^3 y^5\ndeg 15: x=10 y=3\n");
  ASSERT_TRUE(b.idx);
  EXPECT_EQ(deg_of_word(*b.idx, b.pres.relators()[0]) % 15, 0);
}

TEST(Parser, ReadsFixtureFiles) {
  auto b = parse_inputs(std::string(GHW_DATA_DIR) + "/x3y5.pres");
  EXPECT_EQ(b.pres.num_gens(), 2u);
  EXPECT_THROW(parse_inputs(std::string(GHW_DATA_DIR) + "/malformed.pres"), ParseError);
  EXPECT_THROW(parse_inputs(std::string(GHW_DATA_DIR) + "/does-not-exist.pres"), ParseError);
}
