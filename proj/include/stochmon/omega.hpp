#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "stochmon/automaton.hpp"
#include "stochmon/boolean_matrix.hpp"
#include "stochmon/errors.hpp"

namespace stochmon {

/// Immutable omega-expression tree: E -> a | E.E | E^w. Copies share nodes.
class OmegaExpression {
 public:
  enum class Kind { letter, product, omega };

  static OmegaExpression letter(std::string token) {
    return OmegaExpression(std::make_shared<const Node>(Node{Kind::letter, std::move(token), nullptr, nullptr}));
  }
  static OmegaExpression product(const OmegaExpression& left, const OmegaExpression& right) {
    return OmegaExpression(std::make_shared<const Node>(Node{Kind::product, {}, left.node_, right.node_}));
  }
  static OmegaExpression omega(const OmegaExpression& child) {
    return OmegaExpression(std::make_shared<const Node>(Node{Kind::omega, {}, child.node_, nullptr}));
  }

  Kind kind() const noexcept { return node_->kind; }
  const std::string& token() const noexcept { return node_->token; }
  /// Left factor of a product, or the iterated expression of an omega node.
  OmegaExpression left() const { return OmegaExpression(node_->left); }
  OmegaExpression child() const { return OmegaExpression(node_->left); }
  OmegaExpression right() const { return OmegaExpression(node_->right); }

  /// Identity of the shared node; equal ids imply equal trees.
  const void* id() const noexcept { return node_.get(); }

  std::size_t depth() const {
    switch (kind()) {
      case Kind::letter: return 0;
      case Kind::omega: return 1 + child().depth();
      case Kind::product: return 1 + std::max(left().depth(), right().depth());
    }
    return 0;
  }

  friend bool operator==(const OmegaExpression& a, const OmegaExpression& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::letter: return a.token() == b.token();
      case Kind::omega: return a.child() == b.child();
      case Kind::product: return a.left() == b.left() && a.right() == b.right();
    }
    return false;
  }

 private:
  struct Node {
    Kind kind;
    std::string token;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit OmegaExpression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Canonical text: products by juxtaposition with single spaces, omega as
/// postfix "^w". parse_expression(to_string(e)) == e.
inline std::string to_string(const OmegaExpression& e) {
  using Kind = OmegaExpression::Kind;
  switch (e.kind()) {
    case Kind::letter:
      return e.token();
    case Kind::omega: {
      const auto inner = e.child();
      if (inner.kind() == Kind::product) return "(" + to_string(inner) + ")^w";
      return to_string(inner) + "^w";
    }
    case Kind::product: {
      const auto rhs = e.right();
      std::string right = to_string(rhs);
      if (rhs.kind() == Kind::product) right = "(" + right + ")";
      return to_string(e.left()) + " " + right;
    }
  }
  return {};
}

namespace detail {

inline bool is_letter_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

/// Splits a run of letter characters into alphabet tokens by longest match.
inline std::vector<std::string> split_run(std::string_view run, std::size_t offset,
                                          const std::vector<std::string>& alphabet) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < run.size()) {
    std::size_t best = 0;
    for (const auto& letter : alphabet) {
      if (letter.size() > best && run.substr(pos, letter.size()) == letter) best = letter.size();
    }
    if (best == 0) throw ParseError(offset + pos, "unknown letter '" + std::string(run.substr(pos)) + "'");
    tokens.emplace_back(run.substr(pos, best));
    pos += best;
  }
  return tokens;
}

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const std::vector<std::string>& alphabet)
      : text_(text), alphabet_(alphabet) {}

  OmegaExpression parse() {
    skip_space();
    if (at_end()) throw ParseError(pos_, "empty expression");
    auto e = expression();
    skip_space();
    if (!at_end()) throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  OmegaExpression expression() {
    auto result = term();
    for (;;) {
      skip_space();
      if (at_end() || text_[pos_] == ')') return result;
      if (text_[pos_] == '.') {
        ++pos_;
        skip_space();
      }
      result = OmegaExpression::product(result, term());
    }
  }

  OmegaExpression term() {
    auto result = atom();
    for (;;) {
      skip_space();
      if (!at_end() && text_[pos_] == '^') {
        const std::size_t caret = pos_++;
        if (!at_end() && text_[pos_] == 'w') {
          ++pos_;
        } else if (text_.substr(pos_, 2) == "\xCF\x89") {  // UTF-8 omega
          pos_ += 2;
        } else {
          throw ParseError(caret, "expected 'w' after '^'");
        }
        result = OmegaExpression::omega(result);
      } else {
        return result;
      }
    }
  }

  OmegaExpression atom() {
    skip_space();
    if (at_end()) throw ParseError(pos_, "unexpected end of expression");
    if (text_[pos_] == '(') {
      const std::size_t open = pos_++;
      skip_space();
      if (!at_end() && text_[pos_] == ')') throw ParseError(pos_, "empty parentheses");
      auto inner = expression();
      skip_space();
      if (at_end() || text_[pos_] != ')') throw ParseError(open, "unbalanced '('");
      ++pos_;
      return inner;
    }
    if (!is_letter_char(text_[pos_])) throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    const std::size_t start = pos_;
    while (!at_end() && is_letter_char(text_[pos_])) ++pos_;
    const auto tokens = split_run(text_.substr(start, pos_ - start), start, alphabet_);
    auto result = OmegaExpression::letter(tokens.front());
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      result = OmegaExpression::product(result, OmegaExpression::letter(tokens[i]));
    }
    return result;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }

  std::string_view text_;
  const std::vector<std::string>& alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the concrete syntax: juxtaposition or '.' for product (left
/// associative), postfix "^w" for omega, parentheses for grouping.
inline OmegaExpression parse_expression(std::string_view text, const std::vector<std::string>& alphabet) {
  return detail::ExpressionParser(text, alphabet).parse();
}

/// Parses a word: tokens separated by whitespace or '.', juxtaposed letters
/// split by longest match.
inline Word parse_word(std::string_view text, const std::vector<std::string>& alphabet) {
  Word word;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c)) != 0 || c == '.') {
      ++pos;
      continue;
    }
    if (!detail::is_letter_char(c)) throw ParseError(pos, std::string("unexpected '") + c + "' in word");
    const std::size_t start = pos;
    while (pos < text.size() && detail::is_letter_char(text[pos])) ++pos;
    for (auto& token : detail::split_run(text.substr(start, pos - start), start, alphabet)) {
      word.push_back(std::move(token));
    }
  }
  return word;
}

using BooleanGenerators = std::map<std::string, BooleanMatrix, std::less<>>;

/// Ill-typed omega node: the iterated expression is not idempotent.
struct ExpressionTypeError : IdempotenceError {
  ExpressionTypeError(OmegaExpression iterated, const std::string& what)
      : IdempotenceError(what), subexpression(std::move(iterated)) {}
  OmegaExpression subexpression;
};

/// [[a]] for every letter of the automaton.
inline BooleanGenerators boolean_generators(const ProbabilisticAutomaton& automaton) {
  BooleanGenerators gens;
  for (std::size_t a = 0; a < automaton.alphabet().size(); ++a) {
    gens.emplace(automaton.alphabet()[a], boolean_projection(automaton.transitions()[a]));
  }
  return gens;
}

inline BooleanMatrix boolean_interpretation(const OmegaExpression& e, const BooleanGenerators& generators) {
  using Kind = OmegaExpression::Kind;
  switch (e.kind()) {
    case Kind::letter: {
      const auto it = generators.find(e.token());
      if (it == generators.end()) throw UnknownLetter(e.token());
      return it->second;
    }
    case Kind::product:
      return boolean_interpretation(e.left(), generators) * boolean_interpretation(e.right(), generators);
    case Kind::omega: {
      const auto inner = boolean_interpretation(e.child(), generators);
      if (!is_idempotent(inner)) {
        throw ExpressionTypeError(e.child(), "omega applied to non-idempotent '" + to_string(e.child()) + "'");
      }
      return stabilization(inner);
    }
  }
  throw std::logic_error("unreachable");
}

/// Smallest e >= 1 such that [[E]]^e is idempotent.
inline std::size_t idempotent_closure_exponent(const OmegaExpression& e, const BooleanGenerators& generators) {
  const auto base = boolean_interpretation(e, generators);
  auto power = base;
  std::size_t exponent = 1;
  while (!is_idempotent(power)) {
    power = power * base;
    ++exponent;
  }
  return exponent;
}

/// E^k written as a k-fold product.
inline OmegaExpression repeat(const OmegaExpression& e, std::size_t times) {
  auto result = e;
  for (std::size_t i = 1; i < times; ++i) result = OmegaExpression::product(result, e);
  return result;
}

}  // namespace stochmon
