#include <random>

#include <gtest/gtest.h>

#include "magnus/presentation.hpp"
#include "magnus/random.hpp"
#include "oracles.hpp"

using namespace magnus;

namespace {

std::vector<std::string> names(const std::vector<GeneratorId>& gs) {
  std::vector<std::string> out;
  for (const auto& g : gs) out.push_back(g.name());
  return out;
}

TEST(Presentation, ParsesCommutatorRelator) {
  GeneratorRegistry reg;
  const auto p = parse_presentation("< a, b | a b a^-1 b^-1 >", reg);
  EXPECT_EQ(names(p.generators()), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(p.relator_length(), 4u);
  EXPECT_EQ(to_string(p.relator()), "a b a^-1 b^-1");
}

TEST(Presentation, ExpandsPowersAndCommutatorSugar) {
  GeneratorRegistry reg;
  auto p = parse_presentation("<u, v | u^2 v^3>", reg);
  EXPECT_EQ(p.relator_length(), 5u);
  EXPECT_EQ(to_string(p.relator()), "u^2 v^3");

  p = parse_presentation("a,b,c,d | [a,b][c,d]", reg);
  EXPECT_EQ(to_string(p.relator()), "a b a^-1 b^-1 c d c^-1 d^-1");

  p = parse_presentation("<a,b | [a,b]^-2>", reg);
  EXPECT_EQ(to_string(p.relator()), "b a b^-1 a^-1 b a b^-1 a^-1");

  p = parse_presentation("<a, b | a^0 b>", reg);
  EXPECT_EQ(to_string(p.relator()), "b");
}

TEST(Presentation, StoresCyclicallyReducedCore) {
  GeneratorRegistry reg;
  // a b a b^-1 a^-1 is conjugate to b a b^-1, and that to a.
  const auto p = parse_presentation("<a, b | a b a b^-1 a^-1>", reg);
  const auto a = reg.declare("a");
  const auto b = reg.declare("b");
  const Word raw({{a, 1}, {b, 1}, {a, 1}, {b, -1}, {a, -1}});
  EXPECT_EQ(p.relator(), cyclic_reduce(raw).core);
  EXPECT_EQ(to_string(p.relator()), "a");
  EXPECT_EQ(to_string(parse_presentation("<a, b | b a b a^-1 b^-1>", reg).relator()), "b");
  EXPECT_TRUE(is_cyclically_reduced(p.relator()));
}

TEST(Presentation, EmptyRelator) {
  GeneratorRegistry reg;
  const auto p = parse_presentation("<a, b | 1>", reg);
  EXPECT_TRUE(p.relator().empty());
  EXPECT_TRUE(letters_of(p).empty());
  EXPECT_EQ(to_string(p), "<a, b | 1>");
  EXPECT_TRUE(parse_presentation("<a | a a^-1>", reg).relator().empty());
}

TEST(Presentation, LettersOf) {
  GeneratorRegistry reg;
  EXPECT_EQ(names(letters_of(parse_presentation("<a,b | a b a^-1 b^-1>", reg))),
            (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(names(letters_of(parse_presentation("<a,b,c | a^2>", reg))), (std::vector<std::string>{"a"}));
  EXPECT_EQ(names(letters_of(parse_presentation("<c,b,a | a b>", reg))), (std::vector<std::string>{"b", "a"}));
}

TEST(Presentation, SyntaxErrorsCarryPosition) {
  GeneratorRegistry reg;
  try {
    parse_presentation("<a, b | a ^ >", reg);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 12u);
  }
  EXPECT_THROW(parse_presentation("<a, b a b>", reg), ParseError);
  EXPECT_THROW(parse_presentation("<a, b | a b", reg), ParseError);
  EXPECT_THROW(parse_presentation("<a, b | a b> extra", reg), ParseError);
  EXPECT_THROW(parse_presentation("<a, 2b | a>", reg), ParseError);
  EXPECT_THROW(parse_presentation("<a, b | >", reg), ParseError);
  EXPECT_THROW(parse_presentation("<a | [a, a>", reg), ParseError);
  EXPECT_THROW(parse_presentation("<a | a^99999999999>", reg), ParseError);
}

TEST(Presentation, UnknownAndDuplicateGenerators) {
  GeneratorRegistry reg;
  try {
    parse_presentation("<a, b | a c>", reg);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown generator 'c'"), std::string::npos);
    EXPECT_EQ(e.position(), 10u);
  }
  EXPECT_THROW(parse_presentation("<a, a | a>", reg), ParseError);
}

TEST(Presentation, EmptyGeneratorList) {
  GeneratorRegistry reg;
  try {
    parse_presentation("< | 1>", reg);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("empty generator list"), std::string::npos);
  }
}

TEST(Presentation, IdentifiersWithDigitsAndUnderscores) {
  GeneratorRegistry reg;
  const auto p = parse_presentation("<x_1, Y2 | x_1^3 Y2^-1>", reg);
  EXPECT_EQ(names(p.generators()), (std::vector<std::string>{"x_1", "Y2"}));
  EXPECT_EQ(p.relator_length(), 4u);
}

TEST(Presentation, ConstructorValidates) {
  GeneratorRegistry reg;
  const auto a = reg.declare("a");
  const auto b = reg.declare("b");
  EXPECT_THROW(Presentation({a, a}, Word()), Error);
  EXPECT_THROW(Presentation({a}, Word({{b, 1}})), Error);
}

TEST(Presentation, PrintParseRoundTripIsStable) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    GeneratorRegistry reg;
    const auto gens = declare_generators(reg, 1 + trial % 4);
    const Word raw = random_reduced_word(std::span<const GeneratorId>(gens), trial % 16, rng);
    const Presentation p(gens, raw);
    EXPECT_EQ(p.relator(), cyclic_reduce(raw).core);
    const std::string text = to_string(p);
    const auto q = parse_presentation(text, reg);
    EXPECT_EQ(q, p);
    EXPECT_EQ(to_string(q), text);
  }
}

}  // namespace
