#include <sstream>

#include <gtest/gtest.h>

#include "support.hpp"

namespace stochmon {
namespace {

TEST(Acceptance, SingleAcceptingState) {
  const auto a = testing::single_state(true);
  EXPECT_DOUBLE_EQ(acceptance_probability(a, {}), 1.0);
  EXPECT_DOUBLE_EQ(acceptance_probability(a, {"a", "a", "a"}), 1.0);
}

TEST(Acceptance, EmptyWordIsInitialDotFinal) {
  const auto a = ProbabilisticAutomaton({"x", "y", "z"}, {"a"}, {StochasticMatrix::identity(3)}, {0.25, 0.5, 0.25},
                                        {true, false, true});
  EXPECT_DOUBLE_EQ(acceptance_probability(a, {}), 0.5);
}

TEST(Acceptance, CounterexampleRounds) {
  const double x = 0.7;
  const auto a = counterexample_automaton(x);
  // b a^3 leaves qL with probability x^3 / 2; the next b accepts it.
  const auto v = state_distribution(a, {"b", "a", "a", "a"});
  EXPECT_NEAR(v[1], 0.5 * x * x * x, 1e-15);
  EXPECT_NEAR(v[2], 0.5 * (1 - x) * (1 - x) * (1 - x), 1e-15);
  EXPECT_NEAR(acceptance_probability(a, {"b", "a", "a", "a", "b"}), 0.5 * x * x * x, 1e-15);
}

TEST(Acceptance, UnknownLetterThrows) {
  EXPECT_THROW(acceptance_probability(testing::single_state(true), {"z"}), UnknownLetter);
}

TEST(Acceptance, AgreesWithWordMatrix) {
  testing::Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::random_automaton(rng, 1 + trial % 4, 2);
    testing::for_each_word(a.alphabet(), 4, [&](const Word& w) {
      EXPECT_NEAR(acceptance_probability(a, w), accepted_mass(a, word_matrix(a, w)), 1e-12);
    });
  }
}

TEST(Automaton, ValidatesShape) {
  EXPECT_THROW(ProbabilisticAutomaton({"q"}, {"a"}, {StochasticMatrix::identity(2)}, {1.0}, {true}), DimensionError);
  EXPECT_THROW(ProbabilisticAutomaton({"q"}, {"a", "a"}, {StochasticMatrix::identity(1), StochasticMatrix::identity(1)},
                                      {1.0}, {true}),
               std::invalid_argument);
  EXPECT_THROW(ProbabilisticAutomaton({"q", "r"}, {"a"}, {StochasticMatrix::identity(2)}, {0.5, 0.4}, {true, false}),
               StochasticityError);
}

TEST(AutomatonFormat, ParsesDocument) {
  std::istringstream in(R"({
    "states": ["p", "q"],
    "alphabet": ["a", "go"],
    "initial": [1, 0],
    "final": [false, true],
    "transitions": {"a": [[0.5, 0.5], [0, 1]], "go": [[0, 1], [1, 0]]}
  })");
  const auto a = read_automaton(in);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.alphabet(), (std::vector<std::string>{"a", "go"}));
  EXPECT_DOUBLE_EQ(acceptance_probability(a, {"a"}), 0.5);
  EXPECT_DOUBLE_EQ(acceptance_probability(a, {"go"}), 1.0);
  EXPECT_TRUE(a.is_strict());
}

TEST(AutomatonFormat, DiagnosticNamesTheRow) {
  std::istringstream in(R"({"states": ["p", "q"], "alphabet": ["a"], "initial": [1, 0], "final": [false, true],
                            "transitions": {"a": [[0.5, 0.5], [0.2, 0.7]]}})");
  try {
    read_automaton(in);
    FAIL() << "expected AutomatonFormatError";
  } catch (const AutomatonFormatError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("row 1"), std::string::npos) << what;
    EXPECT_NE(what.find("'a'"), std::string::npos) << what;
  }
}

TEST(AutomatonFormat, RejectsMalformedDocuments) {
  for (const char* text : {
           "[1, 2]",
           "{\"states\": [\"p\"]}",
           "not json",
           R"({"states": ["p"], "alphabet": ["a"], "initial": [1], "final": [true], "transitions": {}})",
           R"({"states": ["p"], "alphabet": ["a"], "initial": [1], "final": [true], "transitions": {"a": [[1]], "b": [[1]]}})",
           R"({"states": ["p"], "alphabet": ["a"], "initial": [1], "final": [true], "transitions": {"a": [[1, 0]]}})",
           R"({"states": ["p"], "alphabet": ["a"], "initial": ["x"], "final": [true], "transitions": {"a": [[1]]}})",
       }) {
    std::istringstream in(text);
    EXPECT_THROW(read_automaton(in), AutomatonFormatError) << text;
  }
}

TEST(AutomatonFormat, RoundTripPreservesBehaviour) {
  testing::Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = testing::random_automaton(rng, 1 + trial % 4, 1 + trial % 3, trial % 2 == 0);
    std::stringstream buffer;
    write_automaton(buffer, a);
    const auto b = read_automaton(buffer);
    EXPECT_EQ(b.states(), a.states());
    EXPECT_EQ(b.alphabet(), a.alphabet());
    EXPECT_EQ(b.transitions(), a.transitions());
    EXPECT_EQ(b.initial(), a.initial());
    EXPECT_EQ(b.final_states(), a.final_states());
  }
}

TEST(AutomatonFormat, RecordsStrictness) {
  EXPECT_FALSE(automaton_to_json(counterexample_automaton(0.9))["strict"].get<bool>());
  EXPECT_TRUE(automaton_to_json(testing::single_state(true))["strict"].get<bool>());
}

}  // namespace
}  // namespace stochmon
