#include <gtest/gtest.h>

#include <random>

#include "common.hpp"
#include "ofs/errors.hpp"
#include "oracle.hpp"

using namespace ofs;

TEST(ModelIo, GoldenFilesParse) {
  Model m = ofs::testing::fig4();
  EXPECT_EQ(m.name(), "Syllable");
  EXPECT_EQ(m.level_count(), 2u);
  EXPECT_EQ(m.find("Onset")->set().size(), 19u);
  EXPECT_EQ(m.find("Coda")->set().size(), 25u);
  EXPECT_TRUE(m.find("Onset")->set().contains({}));
  EXPECT_EQ(to_string(m.start().regex()), "Onset Peak Coda");
}

TEST(ModelIo, SerializeRoundTripsBitExactly) {
  std::mt19937 rng(8);
  for (int i = 0; i < 200; ++i) {
    Model m = canonicalize_model(ofs::testing::random_model(rng));
    const std::string text = serialize_model(m);
    Model back = parse_model(text);
    EXPECT_EQ(back, m);
    EXPECT_EQ(serialize_model(canonicalize_model(back)), text);
  }
}

TEST(ModelIo, QuotesAndEscapes) {
  const char* text =
      "ofs-model Q levels=2\n"
      "terminals: a \\\"b\n"
      "level 1:\n"
      "  S => A\n"
      "level 0:\n"
      "  A = { \"a \\\"b\", \"\" }  # trailing comment\n";
  Model m = parse_model(text);
  EXPECT_TRUE(m.find("A")->set().contains(Word{"a", "\"b"}));
  EXPECT_EQ(parse_model(serialize_model(m)), m);
}

TEST(ModelIo, MultiLineStatements) {
  const char* text =
      "ofs-model W levels=2\n"
      "level 1:\n"
      "  W => A B\n"
      "     | B\n"
      "level 0:\n"
      "  A = { \"a\",\n"
      "        \"b\" }\n"
      "  B = { \"c\" }\n";
  Model m = parse_model(text);
  EXPECT_EQ(to_string(m.start().regex()), "A B | B");
  EXPECT_EQ(m.find("A")->set().size(), 2u);
}

TEST(ModelIo, SyntaxErrorsCarryPositions) {
  auto expect_at = [](const std::string& text, std::size_t line) {
    try {
      parse_model(text);
      ADD_FAILURE() << "no error for:\n" << text;
    } catch (const SyntaxError& e) {
      EXPECT_EQ(e.line(), line) << e.what();
    }
  };
  expect_at("", 1);
  expect_at("ofs-modl X levels=2\n", 1);
  expect_at("ofs-model X levels=2\nlevel 1:\n  S => A |\nlevel 0:\n", 4);
  expect_at("ofs-model X levels=2\nlevel 1:\n  S => A\nlevel 0:\n  A = { \"a\" \"b\" }\n", 5);
  expect_at("ofs-model X levels=2\nlevel 3:\n", 2);
  expect_at("ofs-model X levels=2\n  S => A\n", 2);
}

TEST(PrototypeIo, ShippedPrototypesParse) {
  auto syl = load_prototype(ofs::testing::kSource / "prototypes/syllable.ofsp");
  EXPECT_EQ(syl.formers.size(), 3u);
  EXPECT_TRUE(validate_prototype(syl).empty());
  auto word = load_prototype(ofs::testing::kSource / "prototypes/word12.ofsp");
  EXPECT_EQ(word.formers.size(), 12u);
  EXPECT_EQ(word.skeleton.start().regex().children().size(), 10u);
  EXPECT_TRUE(validate_prototype(word).empty());
  EXPECT_EQ(parse_prototype(serialize_prototype(word)), word);
  EXPECT_EQ(to_string(word.formers[0]), "/ \"'\" (x: NOSEP*) /");
}

TEST(PrototypeIo, FormerErrorsMapToFilePositions) {
  const char* text =
      "ofs-model P levels=2\n"
      "level 1:\n"
      "  S => A\n"
      "level 0:\n"
      "  A = / (x: C) (y: C) /\n";
  try {
    parse_prototype(text);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 5u);
  }
}
