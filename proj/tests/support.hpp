#pragma once

// Random generators and brute-force oracles shared by the unit and
// acceptance suites. Oracles here use plain nested vectors and their own
// arithmetic so that they stay independent of the library code they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stochmon/stochmon.hpp"

namespace stochmon::testing {

using Rng = std::mt19937_64;

/// Row with entries in {0, 1/4, 1/2, 3/4, 1}: four quarters dropped into
/// random columns.
inline std::vector<double> quarter_row(Rng& rng, std::size_t dim) {
  std::vector<double> row(dim, 0.0);
  std::uniform_int_distribution<std::size_t> column(0, dim - 1);
  for (int i = 0; i < 4; ++i) row[column(rng)] += 0.25;
  return row;
}

/// Row with a random support and continuous weights bounded away from zero.
inline std::vector<double> continuous_row(Rng& rng, std::size_t dim) {
  std::bernoulli_distribution keep(0.5);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::vector<double> row(dim, 0.0);
  double sum = 0.0;
  for (auto& v : row) {
    if (keep(rng)) {
      v = weight(rng);
      sum += v;
    }
  }
  if (sum == 0.0) {
    row[std::uniform_int_distribution<std::size_t>(0, dim - 1)(rng)] = 1.0;
    return row;
  }
  for (auto& v : row) v /= sum;
  return row;
}

inline StochasticMatrix random_stochastic(Rng& rng, std::size_t dim, bool quarters) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < dim; ++i) rows.push_back(quarters ? quarter_row(rng, dim) : continuous_row(rng, dim));
  return StochasticMatrix::from_rows(rows);
}

/// Quarter-valued automaton with letters a, b, ..., a unique initial state 0
/// and a random non-empty set of final states.
inline ProbabilisticAutomaton random_automaton(Rng& rng, std::size_t states, std::size_t letters,
                                               bool quarters = true) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < states; ++i) names.push_back("s" + std::to_string(i));
  std::vector<std::string> alphabet;
  std::vector<StochasticMatrix> transitions;
  for (std::size_t a = 0; a < letters; ++a) {
    alphabet.emplace_back(1, static_cast<char>('a' + a));
    transitions.push_back(random_stochastic(rng, states, quarters));
  }
  std::vector<double> initial(states, 0.0);
  initial[0] = 1.0;
  std::vector<bool> finals(states, false);
  std::bernoulli_distribution coin(0.4);
  for (std::size_t i = 0; i < states; ++i) finals[i] = coin(rng);
  finals[std::uniform_int_distribution<std::size_t>(0, states - 1)(rng)] = true;
  return ProbabilisticAutomaton(std::move(names), std::move(alphabet), std::move(transitions), std::move(initial),
                                std::move(finals));
}

inline ProbabilisticAutomaton single_state(bool accepting, const std::string& letter = "a") {
  return ProbabilisticAutomaton({"q"}, {letter}, {StochasticMatrix::identity(1)}, {1.0}, {accepting});
}

// ---------------------------------------------------------------------------
// Naive boolean matrices.

using Bits = std::vector<std::vector<bool>>;

inline Bits to_bits(const BooleanMatrix& m) {
  Bits out(m.dim(), std::vector<bool>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i][j] = m(i, j);
  return out;
}

inline Bits naive_product(const Bits& x, const Bits& y) {
  const std::size_t n = x.size();
  Bits out(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (x[i][k] && y[k][j]) out[i][j] = true;
  return out;
}

/// Stabilization straight from its definition.
inline Bits naive_stabilization(const Bits& m) {
  const std::size_t n = m.size();
  std::vector<bool> recurrent(n, true);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < n; ++s)
      if (m[t][s] && !m[s][t]) recurrent[t] = false;
  Bits out(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) out[s][t] = m[s][t] && recurrent[t];
  return out;
}

/// Support of a float matrix, computed with nested vectors.
inline Bits support(const std::vector<std::vector<double>>& m) {
  Bits out(m.size(), std::vector<bool>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = m[i][j] > 0.0;
  return out;
}

inline std::vector<std::vector<double>> to_rows(const StochasticMatrix& m) {
  std::vector<std::vector<double>> rows(m.dim(), std::vector<double>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) rows[i][j] = m(i, j);
  return rows;
}

inline std::vector<std::vector<double>> naive_float_product(const std::vector<std::vector<double>>& x,
                                                            const std::vector<std::vector<double>>& y) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += x[i][k] * y[k][j];
  return out;
}

/// Supports of phi(w) over all non-empty words, enumerated by length until
/// one full length adds nothing new. Each word's matrix is multiplied out in
/// floating point and then projected.
inline std::set<Bits> brute_force_transition_monoid(const ProbabilisticAutomaton& a) {
  std::set<Bits> found;
  std::vector<std::vector<std::vector<double>>> layer;
  for (const auto& m : a.transitions()) layer.push_back(to_rows(m));
  for (;;) {
    bool grew = false;
    for (const auto& m : layer) grew = found.insert(support(m)).second || grew;
    if (!grew) return found;
    std::vector<std::vector<std::vector<double>>> next;
    next.reserve(layer.size() * a.transitions().size());
    for (const auto& m : layer)
      for (const auto& letter : a.transitions()) next.push_back(naive_float_product(m, to_rows(letter)));
    layer = std::move(next);
    if (layer.size() > (std::size_t{1} << 22)) throw std::runtime_error("word enumeration too large");
  }
}

/// Least fixpoint of products and stabilizations, recomputed naively.
inline std::set<Bits> naive_markov_monoid(const ProbabilisticAutomaton& a) {
  std::set<Bits> set;
  for (const auto& m : a.transitions()) set.insert(support(to_rows(m)));
  for (;;) {
    std::set<Bits> next = set;
    for (const auto& x : set) {
      for (const auto& y : set) next.insert(naive_product(x, y));
      if (naive_product(x, x) == x) next.insert(naive_stabilization(x));
    }
    if (next.size() == set.size()) return set;
    set = std::move(next);
  }
}

/// Every omega-expression of depth <= max_depth over `letters` (letters have
/// depth 0), without regard to typing.
inline std::vector<OmegaExpression> all_expressions(const std::vector<std::string>& letters, std::size_t max_depth) {
  std::vector<OmegaExpression> exprs;
  for (const auto& l : letters) exprs.push_back(OmegaExpression::letter(l));
  for (std::size_t d = 1; d <= max_depth; ++d) {
    const auto previous = exprs;
    std::vector<OmegaExpression> next = previous;
    for (const auto& x : previous) {
      if (x.depth() == d - 1) next.push_back(OmegaExpression::omega(x));
      for (const auto& y : previous) {
        if (x.depth() == d - 1 || y.depth() == d - 1) next.push_back(OmegaExpression::product(x, y));
      }
    }
    exprs = std::move(next);
  }
  return exprs;
}

inline bool well_typed(const OmegaExpression& e, const BooleanGenerators& gens) {
  try {
    boolean_interpretation(e, gens);
    return true;
  } catch (const IdempotenceError&) {
    return false;
  }
}

/// Random expression of depth at most max_depth.
inline OmegaExpression random_expression(Rng& rng, const std::vector<std::string>& letters, std::size_t max_depth) {
  std::uniform_int_distribution<int> pick(0, max_depth == 0 ? 0 : 2);
  const int choice = pick(rng);
  if (choice == 0) return OmegaExpression::letter(letters[std::uniform_int_distribution<std::size_t>(0, letters.size() - 1)(rng)]);
  if (choice == 1) return OmegaExpression::omega(random_expression(rng, letters, max_depth - 1));
  return OmegaExpression::product(random_expression(rng, letters, max_depth - 1),
                                  random_expression(rng, letters, max_depth - 1));
}

/// Closed form of the round sum by direct summation: sum_{i=1}^{N-1} (1-(p+q))^(i-1) p.
inline double direct_round_sum(double p, double q, long rounds) {
  double total = 0.0;
  double stay = 1.0;
  for (long i = 1; i <= rounds - 1; ++i) {
    total += stay * p;
    stay *= 1.0 - (p + q);
  }
  return total;
}

/// All words of length <= max_length over the alphabet.
inline void for_each_word(const std::vector<std::string>& alphabet, std::size_t max_length,
                          const std::function<void(const Word&)>& visit) {
  Word word;
  std::function<void()> rec = [&] {
    visit(word);
    if (word.size() == max_length) return;
    for (const auto& l : alphabet) {
      word.push_back(l);
      rec();
      word.pop_back();
    }
  };
  rec();
}

}  // namespace stochmon::testing
