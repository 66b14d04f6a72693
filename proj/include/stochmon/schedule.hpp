#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "stochmon/automaton.hpp"
#include "stochmon/bigint.hpp"
#include "stochmon/matrix.hpp"

namespace stochmon {

/// Factored representation of a finite word: literals, concatenations and
/// big-integer powers. The length is tracked exactly without expansion.
class WordSchedule {
 public:
  enum class Kind { literal, concat, power };

  static WordSchedule literal(Word word) {
    BigInt length = word.size();
    return WordSchedule(std::make_shared<const Node>(
        Node{Kind::literal, std::move(word), nullptr, nullptr, BigInt(1), std::move(length)}));
  }

  static WordSchedule concat(const WordSchedule& left, const WordSchedule& right) {
    return WordSchedule(std::make_shared<const Node>(
        Node{Kind::concat, {}, left.node_, right.node_, BigInt(1), left.length() + right.length()}));
  }

  static WordSchedule power(const WordSchedule& base, BigInt exponent) {
    if (exponent < 1) throw std::domain_error("schedule exponents must be >= 1");
    BigInt length = base.length() * exponent;
    return WordSchedule(std::make_shared<const Node>(
        Node{Kind::power, {}, base.node_, nullptr, std::move(exponent), std::move(length)}));
  }

  Kind kind() const noexcept { return node_->kind; }
  const Word& word() const noexcept { return node_->word; }
  WordSchedule left() const { return WordSchedule(node_->left); }
  WordSchedule base() const { return WordSchedule(node_->left); }
  WordSchedule right() const { return WordSchedule(node_->right); }
  const BigInt& exponent() const noexcept { return node_->exponent; }
  const BigInt& length() const noexcept { return node_->length; }
  const void* id() const noexcept { return node_.get(); }

  /// The denoted word; throws std::length_error beyond `max_length` letters.
  Word expand(std::size_t max_length = 1'000'000) const {
    if (length() > max_length) throw std::length_error("schedule too long to expand: " + to_string(length()));
    Word out;
    append_to(out);
    return out;
  }

 private:
  struct Node {
    Kind kind;
    Word word;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    BigInt exponent;
    BigInt length;
  };

  explicit WordSchedule(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  void append_to(Word& out) const {
    switch (kind()) {
      case Kind::literal:
        out.insert(out.end(), word().begin(), word().end());
        break;
      case Kind::concat:
        left().append_to(out);
        right().append_to(out);
        break;
      case Kind::power: {
        const auto times = exponent().convert_to<std::size_t>();
        for (std::size_t i = 0; i < times; ++i) base().append_to(out);
        break;
      }
    }
  }

  std::shared_ptr<const Node> node_;
};

inline WordSchedule concat_schedules(const WordSchedule& s, const WordSchedule& t) {
  return WordSchedule::concat(s, t);
}

/// Renders a schedule compactly, e.g. "(b a^2)^120".
inline std::string to_string(const WordSchedule& s) {
  using Kind = WordSchedule::Kind;
  switch (s.kind()) {
    case Kind::literal: {
      if (s.word().empty()) return "()";
      std::string out;
      for (const auto& letter : s.word()) out += (out.empty() ? "" : " ") + letter;
      return s.word().size() > 1 ? "(" + out + ")" : out;
    }
    case Kind::concat:
      return "(" + to_string(s.left()) + " " + to_string(s.right()) + ")";
    case Kind::power:
      return to_string(s.base()) + "^" + to_string(s.exponent());
  }
  return {};
}

/// phi of the denoted word, powers evaluated by binary exponentiation.
/// Shared sub-schedules are evaluated once.
inline StochasticMatrix schedule_matrix(const ProbabilisticAutomaton& automaton, const WordSchedule& schedule) {
  std::unordered_map<const void*, StochasticMatrix> memo;
  auto eval = [&](auto&& self, const WordSchedule& s) -> StochasticMatrix {
    if (const auto it = memo.find(s.id()); it != memo.end()) return it->second;
    StochasticMatrix m;
    switch (s.kind()) {
      case WordSchedule::Kind::literal:
        m = word_matrix(automaton, s.word());
        break;
      case WordSchedule::Kind::concat:
        m = self(self, s.left()) * self(self, s.right());
        break;
      case WordSchedule::Kind::power:
        m = matrix_power(self(self, s.base()), s.exponent());
        break;
    }
    memo.emplace(s.id(), m);
    return m;
  };
  return eval(eval, schedule);
}

/// Acceptance probability of the word denoted by `schedule`.
inline double accepted_power_probability(const ProbabilisticAutomaton& automaton, const WordSchedule& schedule) {
  return accepted_mass(automaton, schedule_matrix(automaton, schedule));
}

}  // namespace stochmon
