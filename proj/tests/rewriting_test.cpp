#include <random>

#include <gtest/gtest.h>

#include "magnus/random.hpp"
#include "magnus/rewriting.hpp"
#include "oracles.hpp"

using namespace magnus;

namespace {

std::vector<std::string> names(const std::vector<GeneratorId>& gs) {
  std::vector<std::string> out;
  for (const auto& g : gs) out.push_back(g.name());
  return out;
}

/// Expands `emitted` with the oracle, using the recorded renaming only to
/// read off (base, subscript) for each letter.
oracle::IntWord oracle_expansion(const Case1Result& d, const std::vector<GeneratorId>& gens) {
  std::vector<oracle::Subscripted> seq;
  for (const auto& l : d.emitted.letters()) {
    const auto& o = std::get<origin::Subscripted>(l.gen.origin());
    const int base = static_cast<int>(std::find(gens.begin(), gens.end(), *o.base) - gens.begin()) + 1;
    seq.push_back({base, o.subscript, l.sign});
  }
  const int t = static_cast<int>(std::find(gens.begin(), gens.end(), d.pivot_t) - gens.begin()) + 1;
  return oracle::expand(seq, t);
}

TEST(SplitFreePart, SplitsAbsentGenerators) {
  GeneratorRegistry reg;
  auto s = split_free_part(parse_presentation("<a,b,c | a b a^-1 b^-1>", reg));
  EXPECT_EQ(to_string(s.core), "<a, b | a b a^-1 b^-1>");
  EXPECT_EQ(names(s.free_generators), (std::vector<std::string>{"c"}));

  s = split_free_part(parse_presentation("<a,b | a b a^-1 b^-1>", reg));
  EXPECT_EQ(to_string(s.core), "<a, b | a b a^-1 b^-1>");
  EXPECT_TRUE(s.free_generators.empty());

  s = split_free_part(parse_presentation("<a,b,c | 1>", reg));
  EXPECT_TRUE(s.core.generators().empty());
  EXPECT_TRUE(s.core.relator().empty());
  EXPECT_EQ(names(s.free_generators), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(FindSingleOccurrence, Examples) {
  GeneratorRegistry reg;
  EXPECT_EQ(find_single_occurrence(parse_presentation("<a,b | a b a>", reg))->name(), "b");
  EXPECT_FALSE(find_single_occurrence(parse_presentation("<a,b | a b a^-1 b^-1>", reg)));
  EXPECT_EQ(find_single_occurrence(parse_presentation("<u,v | u u v>", reg))->name(), "v");
}

TEST(FindZeroExponent, Examples) {
  GeneratorRegistry reg;
  EXPECT_EQ(find_zero_exponent(parse_presentation("<t,b | t b t^-1 b^-1>", reg))->name(), "t");
  EXPECT_FALSE(find_zero_exponent(parse_presentation("<u,v | u u v v v>", reg)));
  EXPECT_EQ(find_zero_exponent(parse_presentation("<a,t | t a^2 t^-1 a^-3>", reg))->name(), "t");
}

TEST(Case1Rewrite, TorusCommutator) {
  GeneratorRegistry reg;
  const auto p = parse_presentation("<t,b | t b t^-1 b^-1>", reg);
  const auto d = case1_rewrite(p, reg.declare("t"), reg);
  EXPECT_EQ(to_string(d.rewritten), "b@1 b@0^-1");
  EXPECT_EQ(d.subscript_min, 0);
  EXPECT_EQ(d.subscript_max, 1);
  EXPECT_EQ(d.rewritten.size(), p.relator_length() - 2);
  EXPECT_EQ(d.pivot_b.name(), "b");
  EXPECT_EQ(to_string(d.child), "<b@0, b@1 | b@1 b@0^-1>");
  EXPECT_EQ(oracle_expansion(d, p.generators()), oracle::to_ints(p.relator(), p.generators()));
}

TEST(Case1Rewrite, NegativeSubscripts) {
  GeneratorRegistry reg;
  const auto p = parse_presentation("<t,b | b t^-3 b t^3>", reg);
  const auto d = case1_rewrite(p, reg.declare("t"), reg);
  EXPECT_EQ(to_string(d.rewritten), "b@0 b@-3");
  EXPECT_EQ(d.subscript_min, -3);
  EXPECT_EQ(d.subscript_max, 0);
  EXPECT_LE(d.rewritten.size() + 2, p.relator_length());
  EXPECT_EQ(oracle_expansion(d, p.generators()), oracle::to_ints(p.relator(), p.generators()));
}

TEST(Case1Rewrite, RepeatedPivotLetters) {
  GeneratorRegistry reg;
  const auto p = parse_presentation("<t,b | t t b t^-1 t^-1 b>", reg);
  const auto d = case1_rewrite(p, reg.declare("t"), reg);
  EXPECT_EQ(to_string(d.rewritten), "b@2 b@0");
  EXPECT_EQ(d.subscript_min, 0);
  EXPECT_EQ(d.subscript_max, 2);
  EXPECT_EQ(oracle_expansion(d, p.generators()), oracle::to_ints(p.relator(), p.generators()));
}

TEST(Case1Rewrite, PreconditionErrors) {
  GeneratorRegistry reg;
  const auto t = reg.declare("t");
  EXPECT_THROW(case1_rewrite(parse_presentation("<t,b | t b t b^-1>", reg), t, reg), PreconditionError);
  EXPECT_THROW(case1_rewrite(parse_presentation("<t,b | b^2>", reg), t, reg), PreconditionError);
  try {
    case1_rewrite(parse_presentation("<t,b | t b t b^-1>", reg), t, reg);
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("nonzero exponent sum"), std::string::npos);
  }
  try {
    case1_rewrite(parse_presentation("<t,b | b^2>", reg), t, reg);
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("fewer than two"), std::string::npos);
  }
}

TEST(Case1Rewrite, RandomExpansionAndLength) {
  std::mt19937_64 rng(23);
  int eligible = 0;
  for (int trial = 0; trial < 3000 && eligible < 500; ++trial) {
    GeneratorRegistry reg;
    const auto gens = declare_generators(reg, 2 + trial % 3);
    const Presentation p(gens, random_cyclically_reduced_word(std::span<const GeneratorId>(gens), 2 + trial % 11, rng));
    for (const auto& t : gens) {
      const Word& r = p.relator();
      if (exponent_sum(r, t) != 0 || occurrence_count(r, t) < 2 || occurrence_count(r, t) == r.size()) continue;
      ++eligible;
      const auto d = case1_rewrite(p, t, reg);
      EXPECT_EQ(oracle_expansion(d, gens), oracle::to_ints(r, gens)) << to_string(p);
      EXPECT_LE(d.rewritten.size(), r.size() - occurrence_count(r, t));
      EXPECT_FALSE(d.rewritten.empty());
      EXPECT_TRUE(is_cyclically_reduced(d.rewritten));
      EXPECT_LE(d.subscript_min, d.subscript_max);
    }
  }
  EXPECT_GE(eligible, 100);
}

TEST(ChooseCase2Pair, Examples) {
  GeneratorRegistry reg;
  auto pair = choose_case2_pair(parse_presentation("<u,v | u u v v v>", reg));
  EXPECT_EQ(pair.u.name(), "u");
  EXPECT_EQ(pair.v.name(), "v");

  pair = choose_case2_pair(parse_presentation("<a,b,c | a b c a b c>", reg));
  EXPECT_EQ(pair.u.name(), "a");
  EXPECT_EQ(pair.v.name(), "b");

  // Smaller |alpha * beta| wins over declaration order.
  pair = choose_case2_pair(parse_presentation("<a,b,c | a^3 b c b^-2 c>", reg));
  EXPECT_EQ(pair.u.name(), "b");
  EXPECT_EQ(pair.v.name(), "c");

  EXPECT_THROW(choose_case2_pair(parse_presentation("<a | a^3>", reg)), PreconditionError);
}

TEST(Case2Substitute, Trefoil) {
  GeneratorRegistry reg;
  const auto p = parse_presentation("<u,v | u^2 v^3>", reg);
  const auto d = case2_substitute(p, reg.declare("u"), reg.declare("v"), reg);
  EXPECT_EQ(d.alpha, 2);
  EXPECT_EQ(d.beta, 3);
  EXPECT_EQ(to_string(d.image_relator), "b#1 t#1^-3 b#1 t#1^3");
  EXPECT_EQ(d.image_relator.size(), 8u);
  EXPECT_EQ(exponent_sum(d.image_relator, d.fresh_t), 0);
  EXPECT_EQ(occurrence_count(d.image_relator, d.fresh_b), 2u);
  EXPECT_EQ(to_string(d.embedded), "<t#1, b#1 | b#1 t#1^-3 b#1 t#1^3>");
}

TEST(Case2Substitute, StableLetterCanCancel) {
  GeneratorRegistry reg;
  const auto p = parse_presentation("<u,v | u v u v>", reg);
  const auto d = case2_substitute(p, reg.declare("u"), reg.declare("v"), reg);
  EXPECT_EQ(d.alpha, 2);
  EXPECT_EQ(d.beta, 2);
  EXPECT_EQ(to_string(d.image_relator), "b#1^2");
  EXPECT_EQ(occurrence_count(d.image_relator, d.fresh_t), 0u);
}

TEST(Case2Substitute, PreconditionErrors) {
  GeneratorRegistry reg;
  const auto u = reg.declare("u");
  const auto v = reg.declare("v");
  EXPECT_THROW(case2_substitute(parse_presentation("<u,v | u v u^-1 v^2>", reg), u, v, reg), PreconditionError);
  EXPECT_THROW(case2_substitute(parse_presentation("<u,v | u^2 v>", reg), u, v, reg), PreconditionError);
  EXPECT_THROW(case2_substitute(parse_presentation("<u,v | u^2 v^2>", reg), u, u, reg), PreconditionError);
}

TEST(Case2Substitute, RandomImagesHaveZeroStableExponent) {
  std::mt19937_64 rng(29);
  int accepted = 0;
  for (int trial = 0; trial < 4000 && accepted < 300; ++trial) {
    GeneratorRegistry reg;
    const auto gens = declare_generators(reg, 2 + trial % 3);
    const Presentation p(gens, random_cyclically_reduced_word(std::span<const GeneratorId>(gens), 4 + trial % 9, rng));
    if (letters_of(p).size() != gens.size()) continue;
    bool ok = true;
    for (const auto& g : gens)
      ok = ok && exponent_sum(p.relator(), g) != 0 && occurrence_count(p.relator(), g) >= 2;
    if (!ok) continue;
    ++accepted;
    const auto pair = choose_case2_pair(p);
    const auto d = case2_substitute(p, pair.u, pair.v, reg);
    EXPECT_EQ(exponent_sum(d.image_relator, d.fresh_t), 0);
    EXPECT_EQ(occurrence_count(d.image_relator, d.fresh_b), occurrence_count(p.relator(), pair.u));
    EXPECT_LE(d.image_relator.size() - occurrence_count(d.image_relator, d.fresh_t) + 2, p.relator_length());
  }
  EXPECT_GE(accepted, 50);
}

}  // namespace
