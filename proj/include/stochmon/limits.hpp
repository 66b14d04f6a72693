#pragma once

#include <unordered_map>

#include "stochmon/automaton.hpp"
#include "stochmon/boolean_matrix.hpp"
#include "stochmon/matrix.hpp"
#include "stochmon/omega.hpp"

namespace stochmon {

/// Threshold used to booleanize numerically computed limits.
inline constexpr double projection_epsilon = 1e-6;

struct LimitOptions {
  double tolerance = 1e-10;
  unsigned max_k = 60;
};

/// M^infinity, approximated by the factorial powers M^(k!) for k = 2, 3, ...
/// Stops at the first k where M^(k!) is within `tolerance` of M^((k-1)!) in
/// norm and the two have the same support. Decaying entries can still be
/// tiny but nonzero (0.5^720, say); project with projection_epsilon.
inline StochasticMatrix limit_matrix(const StochasticMatrix& m, const LimitOptions& options = {}) {
  if (!(options.tolerance > 0.0)) throw std::domain_error("limit tolerance must be positive");
  StochasticMatrix current = m;
  double distance = 0.0;
  for (unsigned k = 2; k <= options.max_k; ++k) {
    StochasticMatrix next = matrix_power(current, k);
    distance = matrix_norm(next.matrix() - current.matrix());
    const bool same_support = boolean_projection(next) == boolean_projection(current);
    current = std::move(next);
    if (distance < options.tolerance && same_support) return current;
  }
  throw NonConvergence(distance, "factorial powers did not converge by k = " + std::to_string(options.max_k) +
                                     " (last distance " + std::to_string(distance) + ")");
}

/// Evaluates omega-expressions to stochastic matrices: letters to phi(a),
/// products to matrix products, E^w to the limit of phi(E). Results are
/// cached per expression node, so enumerations that share subtrees are
/// cheap. Omega nodes are type-checked against the boolean semantics.
class NumericInterpreter {
 public:
  explicit NumericInterpreter(const ProbabilisticAutomaton& automaton, LimitOptions options = {})
      : automaton_(automaton), generators_(boolean_generators(automaton)), options_(options) {}

  StochasticMatrix evaluate(const OmegaExpression& e) { return entry(e).numeric; }

  /// Boolean interpretation, computed alongside the numeric one.
  BooleanMatrix boolean(const OmegaExpression& e) { return entry(e).boolean; }

 private:
  struct Entry {
    OmegaExpression expression;  // keeps the keyed node alive
    StochasticMatrix numeric;
    BooleanMatrix boolean;
  };

  const Entry& entry(const OmegaExpression& e) {
    if (const auto it = cache_.find(e.id()); it != cache_.end()) return it->second;
    using Kind = OmegaExpression::Kind;
    StochasticMatrix numeric;
    BooleanMatrix boolean;
    switch (e.kind()) {
      case Kind::letter:
        numeric = automaton_.transition(e.token());
        boolean = generators_.at(e.token());
        break;
      case Kind::product: {
        const auto& lhs = entry(e.left());
        const auto& rhs = entry(e.right());
        numeric = lhs.numeric * rhs.numeric;
        boolean = lhs.boolean * rhs.boolean;
        break;
      }
      case Kind::omega: {
        const auto& inner = entry(e.child());
        if (!is_idempotent(inner.boolean)) {
          throw ExpressionTypeError(e.child(), "omega applied to non-idempotent '" + to_string(e.child()) + "'");
        }
        boolean = stabilization(inner.boolean);
        numeric = limit_matrix(inner.numeric, options_);
        break;
      }
    }
    return cache_.emplace(e.id(), Entry{e, std::move(numeric), std::move(boolean)}).first->second;
  }

  const ProbabilisticAutomaton& automaton_;
  BooleanGenerators generators_;
  LimitOptions options_;
  std::unordered_map<const void*, Entry> cache_;
};

inline StochasticMatrix numeric_interpretation(const OmegaExpression& e, const ProbabilisticAutomaton& automaton,
                                               const LimitOptions& options = {}) {
  return NumericInterpreter(automaton, options).evaluate(e);
}

}  // namespace stochmon
