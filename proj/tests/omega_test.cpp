#include <gtest/gtest.h>

#include "support.hpp"

namespace stochmon {
namespace {

using E = OmegaExpression;
const std::vector<std::string> ab = {"a", "b"};

TEST(ParseExpression, Examples) {
  EXPECT_EQ(parse_expression("a", ab), E::letter("a"));
  EXPECT_EQ(parse_expression("(b a^w)^w", ab), E::omega(E::product(E::letter("b"), E::omega(E::letter("a")))));
  EXPECT_EQ(parse_expression("a^w^w", ab), E::omega(E::omega(E::letter("a"))));
}

TEST(ParseExpression, ProductIsLeftAssociative) {
  const auto expected = E::product(E::product(E::letter("a"), E::letter("b")), E::letter("a"));
  EXPECT_EQ(parse_expression("a b a", ab), expected);
  EXPECT_EQ(parse_expression("aba", ab), expected);
  EXPECT_EQ(parse_expression("a.b . a", ab), expected);
  EXPECT_EQ(parse_expression("a (b a)", ab), E::product(E::letter("a"), E::product(E::letter("b"), E::letter("a"))));
}

TEST(ParseExpression, OmegaBindsTighterThanProduct) {
  EXPECT_EQ(parse_expression("b a^w", ab), E::product(E::letter("b"), E::omega(E::letter("a"))));
  EXPECT_EQ(parse_expression("a^\xCF\x89", ab), E::omega(E::letter("a")));
}

TEST(ParseExpression, MultiCharacterLetters) {
  const std::vector<std::string> alphabet = {"check", "end", "a"};
  EXPECT_EQ(parse_expression("check (a end)^w", alphabet),
            E::product(E::letter("check"), E::omega(E::product(E::letter("a"), E::letter("end")))));
  EXPECT_EQ(parse_expression("checkend", alphabet), E::product(E::letter("check"), E::letter("end")));
}

TEST(ParseExpression, ErrorsCarryPositions) {
  auto position_of = [](std::string_view text) -> std::size_t {
    try {
      parse_expression(text, ab);
    } catch (const ParseError& e) {
      return e.position;
    }
    return std::string::npos;
  };
  EXPECT_EQ(position_of("a c"), 2u);
  EXPECT_EQ(position_of("(a b"), 0u);
  EXPECT_EQ(position_of("a^x"), 1u);
  EXPECT_EQ(position_of("a)"), 1u);
  EXPECT_EQ(position_of(""), 0u);
  EXPECT_EQ(position_of("a ()"), 3u);
  EXPECT_EQ(position_of("^w"), 0u);
}

TEST(PrintExpression, RoundTripsRandomExpressions) {
  testing::Rng rng(31);
  const std::vector<std::string> letters = {"a", "b", "c"};
  for (int trial = 0; trial < 2000; ++trial) {
    const auto e = testing::random_expression(rng, letters, 6);
    EXPECT_EQ(parse_expression(to_string(e), letters), e) << to_string(e);
  }
}

TEST(PrintExpression, Canonical) {
  EXPECT_EQ(to_string(parse_expression("(b a^w)^w", ab)), "(b a^w)^w");
  EXPECT_EQ(to_string(parse_expression("a(ba)", ab)), "a (b a)");
}

TEST(ParseWord, Tokens) {
  const std::vector<std::string> alphabet = {"a", "ab", "b"};
  EXPECT_EQ(parse_word("ab b", alphabet), (Word{"ab", "b"}));
  EXPECT_EQ(parse_word("a.b", alphabet), (Word{"a", "b"}));
  EXPECT_EQ(parse_word("", alphabet), Word{});
  EXPECT_THROW(parse_word("ac", alphabet), ParseError);
}

BooleanGenerators generators(std::string_view a_bits) { return {{"a", BooleanMatrix::from_bitstring(a_bits)}}; }

TEST(BooleanInterpretation, Examples) {
  EXPECT_EQ(boolean_interpretation(E::letter("a"), generators("1")), BooleanMatrix::from_bitstring("1"));
  EXPECT_EQ(boolean_interpretation(E::omega(E::letter("a")), generators("1101")),
            BooleanMatrix::from_bitstring("0101"));
  EXPECT_THROW(boolean_interpretation(E::omega(E::letter("a")), generators("0110")), IdempotenceError);
  EXPECT_THROW(boolean_interpretation(E::letter("b"), generators("1")), UnknownLetter);
}

TEST(BooleanInterpretation, TypeErrorNamesSubexpression) {
  const auto e = parse_expression("b (a a a)^w", ab);
  BooleanGenerators gens = {{"a", BooleanMatrix::from_bitstring("0110")}, {"b", BooleanMatrix::identity(2)}};
  try {
    boolean_interpretation(e, gens);
    FAIL();
  } catch (const ExpressionTypeError& err) {
    EXPECT_EQ(to_string(err.subexpression), "a a a");
  }
}

TEST(BooleanInterpretation, ProductIsHomomorphic) {
  testing::Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::random_automaton(rng, 1 + trial % 4, 2);
    const auto gens = boolean_generators(a);
    const auto x = testing::random_expression(rng, a.alphabet(), 3);
    const auto y = testing::random_expression(rng, a.alphabet(), 3);
    if (!testing::well_typed(x, gens) || !testing::well_typed(y, gens)) continue;
    EXPECT_EQ(boolean_interpretation(E::product(x, y), gens),
              boolean_interpretation(x, gens) * boolean_interpretation(y, gens));
  }
}

TEST(IdempotentClosureExponent, Examples) {
  EXPECT_EQ(idempotent_closure_exponent(E::letter("a"), {{"a", BooleanMatrix::identity(3)}}), 1u);
  EXPECT_EQ(idempotent_closure_exponent(E::letter("a"), generators("0110")), 2u);
  EXPECT_EQ(idempotent_closure_exponent(E::letter("a"), generators("1101")), 1u);
  // A 3-cycle needs its third power.
  EXPECT_EQ(idempotent_closure_exponent(E::letter("a"), generators("010001100")), 3u);
}

TEST(IdempotentClosureExponent, RepairIsWellTyped) {
  const auto gens = generators("010001100");
  const auto e = E::letter("a");
  const auto k = idempotent_closure_exponent(e, gens);
  EXPECT_NO_THROW(boolean_interpretation(E::omega(repeat(e, k)), gens));
}

}  // namespace
}  // namespace stochmon
