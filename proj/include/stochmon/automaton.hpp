#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stochmon/errors.hpp"
#include "stochmon/matrix.hpp"

namespace stochmon {

/// A finite word as a sequence of alphabet tokens.
using Word = std::vector<std::string>;

/// Probabilistic automaton (Q, phi, I, F) with one stochastic matrix per letter.
class ProbabilisticAutomaton {
 public:
  ProbabilisticAutomaton(std::vector<std::string> states, std::vector<std::string> alphabet,
                         std::vector<StochasticMatrix> transitions, std::vector<double> initial,
                         std::vector<bool> final_states)
      : states_(std::move(states)),
        alphabet_(std::move(alphabet)),
        transitions_(std::move(transitions)),
        initial_(std::move(initial)),
        final_(std::move(final_states)) {
    const std::size_t n = states_.size();
    if (n == 0) throw std::invalid_argument("automaton needs at least one state");
    if (transitions_.size() != alphabet_.size()) {
      throw std::invalid_argument("expected one transition matrix per letter");
    }
    for (std::size_t a = 0; a < alphabet_.size(); ++a) {
      if (alphabet_[a].empty()) throw std::invalid_argument("empty letter in alphabet");
      if (std::find(alphabet_.begin(), alphabet_.begin() + static_cast<std::ptrdiff_t>(a), alphabet_[a]) !=
          alphabet_.begin() + static_cast<std::ptrdiff_t>(a)) {
        throw std::invalid_argument("duplicate letter '" + alphabet_[a] + "'");
      }
      if (transitions_[a].dim() != n) {
        throw DimensionError("transition matrix of letter '" + alphabet_[a] + "' has dimension " +
                             std::to_string(transitions_[a].dim()) + ", expected " + std::to_string(n));
      }
    }
    if (initial_.size() != n || final_.size() != n) {
      throw DimensionError("initial and final vectors must have one entry per state");
    }
    double sum = 0.0;
    for (double v : initial_) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("initial vector has a negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > StochasticMatrix::row_tolerance) {
      throw StochasticityError(0, "initial vector sums to " + std::to_string(sum) + ", expected 1");
    }
  }

  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::vector<double>& initial() const noexcept { return initial_; }
  const std::vector<bool>& final_states() const noexcept { return final_; }
  const std::vector<StochasticMatrix>& transitions() const noexcept { return transitions_; }

  std::optional<std::size_t> letter_index(std::string_view letter) const {
    const auto it = std::find(alphabet_.begin(), alphabet_.end(), letter);
    if (it == alphabet_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - alphabet_.begin());
  }

  const StochasticMatrix& transition(std::string_view letter) const {
    const auto index = letter_index(letter);
    if (!index) throw UnknownLetter(std::string(letter));
    return transitions_[*index];
  }

  /// True when every transition probability lies in {0, 1/2, 1}.
  bool is_strict() const {
    for (const auto& m : transitions_)
      for (std::size_t i = 0; i < m.dim(); ++i)
        for (double v : m.matrix().row(i))
          if (v != 0.0 && v != 0.5 && v != 1.0) return false;
    return true;
  }

 private:
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::vector<StochasticMatrix> transitions_;
  std::vector<double> initial_;
  std::vector<bool> final_;
};

/// phi(w); the empty word maps to the identity.
inline StochasticMatrix word_matrix(const ProbabilisticAutomaton& automaton, const Word& word) {
  StochasticMatrix result = StochasticMatrix::identity(automaton.size());
  for (const auto& letter : word) result = result * automaton.transition(letter);
  return result;
}

/// I . M . F for an arbitrary matrix M over the automaton's states.
inline double accepted_mass(const ProbabilisticAutomaton& automaton, const StochasticMatrix& m) {
  double total = 0.0;
  for (std::size_t s = 0; s < automaton.size(); ++s) {
    if (automaton.initial()[s] == 0.0) continue;
    double row = 0.0;
    for (std::size_t t = 0; t < automaton.size(); ++t)
      if (automaton.final_states()[t]) row += m(s, t);
    total += automaton.initial()[s] * row;
  }
  return total;
}

/// Distribution over states after reading `word` from the initial vector.
inline std::vector<double> state_distribution(const ProbabilisticAutomaton& automaton, const Word& word) {
  std::vector<double> v = automaton.initial();
  std::vector<double> next(v.size());
  for (const auto& letter : word) {
    const auto& m = automaton.transition(letter);
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t s = 0; s < v.size(); ++s) {
      if (v[s] == 0.0) continue;
      for (std::size_t t = 0; t < v.size(); ++t) next[t] += v[s] * m(s, t);
    }
    v.swap(next);
  }
  return v;
}

/// Pr_A(w) = I . phi(w) . F.
inline double acceptance_probability(const ProbabilisticAutomaton& automaton, const Word& word) {
  const auto v = state_distribution(automaton, word);
  double p = 0.0;
  for (std::size_t t = 0; t < v.size(); ++t)
    if (automaton.final_states()[t]) p += v[t];
  return p;
}

}  // namespace stochmon
