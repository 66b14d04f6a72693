#pragma once

#include <optional>
#include <ostream>
#include <set>
#include <unordered_map>
#include <vector>

#include "stochmon/automaton.hpp"
#include "stochmon/boolean_matrix.hpp"
#include "stochmon/omega.hpp"

namespace stochmon {

/// A boolean matrix with an omega-expression that evaluates to it.
struct MonoidElement {
  enum class Origin { generator, product, stabilization };

  BooleanMatrix matrix;
  OmegaExpression witness;
  Origin origin;
};

/// Closure of the letter projections under product and stabilization of
/// idempotents. Elements are kept in discovery order.
class MarkovMonoid {
 public:
  MarkovMonoid(BooleanGenerators generators, std::vector<MonoidElement> elements)
      : generators_(std::move(generators)), elements_(std::move(elements)) {
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].matrix, i);
  }

  const std::vector<MonoidElement>& elements() const noexcept { return elements_; }
  const BooleanGenerators& generators() const noexcept { return generators_; }
  std::size_t size() const noexcept { return elements_.size(); }

  const MonoidElement* find(const BooleanMatrix& m) const {
    const auto it = index_.find(m);
    return it == index_.end() ? nullptr : &elements_[it->second];
  }
  bool contains(const BooleanMatrix& m) const { return find(m) != nullptr; }

  std::size_t count(MonoidElement::Origin origin) const {
    std::size_t n = 0;
    for (const auto& e : elements_) n += e.origin == origin ? 1 : 0;
    return n;
  }

  std::set<BooleanMatrix> matrices() const {
    std::set<BooleanMatrix> out;
    for (const auto& e : elements_) out.insert(e.matrix);
    return out;
  }

 private:
  BooleanGenerators generators_;
  std::vector<MonoidElement> elements_;
  std::unordered_map<BooleanMatrix, std::size_t, BooleanMatrixHash> index_;
};

namespace detail {

// Round-based worklist saturation. Each round multiplies every pair that
// involves an element discovered in the previous round, then stabilizes the
// idempotents among those elements. The first witness found for a matrix is
// kept.
inline std::vector<MonoidElement> saturate(const ProbabilisticAutomaton& automaton, bool with_stabilization) {
  std::vector<MonoidElement> elements;
  std::unordered_map<BooleanMatrix, std::size_t, BooleanMatrixHash> seen;
  auto add = [&](BooleanMatrix m, const OmegaExpression& witness, MonoidElement::Origin origin) {
    if (seen.contains(m)) return;
    seen.emplace(m, elements.size());
    elements.push_back({std::move(m), witness, origin});
  };

  for (std::size_t a = 0; a < automaton.alphabet().size(); ++a) {
    add(boolean_projection(automaton.transitions()[a]), OmegaExpression::letter(automaton.alphabet()[a]),
        MonoidElement::Origin::generator);
  }

  std::size_t round_start = 0;
  while (round_start < elements.size()) {
    const std::size_t round_end = elements.size();
    for (std::size_t i = 0; i < round_end; ++i) {
      for (std::size_t j = 0; j < round_end; ++j) {
        if (i < round_start && j < round_start) continue;
        add(elements[i].matrix * elements[j].matrix,
            OmegaExpression::product(elements[i].witness, elements[j].witness), MonoidElement::Origin::product);
      }
    }
    if (with_stabilization) {
      for (std::size_t i = round_start; i < round_end; ++i) {
        if (!is_idempotent(elements[i].matrix)) continue;
        add(stabilization(elements[i].matrix), OmegaExpression::omega(elements[i].witness),
            MonoidElement::Origin::stabilization);
      }
    }
    round_start = round_end;
  }
  return elements;
}

}  // namespace detail

/// Closure of the letter projections under boolean product only.
inline std::set<BooleanMatrix> transition_monoid(const ProbabilisticAutomaton& automaton) {
  std::set<BooleanMatrix> out;
  for (auto& e : detail::saturate(automaton, false)) out.insert(std::move(e.matrix));
  return out;
}

inline MarkovMonoid markov_monoid(const ProbabilisticAutomaton& automaton) {
  return MarkovMonoid(boolean_generators(automaton), detail::saturate(automaton, true));
}

/// Every edge leaving an initial state (I(s) > 0) ends in a final state.
inline bool is_value1_witness(const BooleanMatrix& m, const ProbabilisticAutomaton& automaton) {
  std::uint64_t finals = 0;
  for (std::size_t t = 0; t < automaton.size(); ++t)
    if (automaton.final_states()[t]) finals |= BooleanMatrix::bit(t);
  for (std::size_t s = 0; s < automaton.size(); ++s) {
    if (automaton.initial()[s] > 0.0 && (m.row(s) & ~finals) != 0) return false;
  }
  return true;
}

/// First element, in discovery order, that is a value-1 witness.
inline std::optional<MonoidElement> find_value1_witness(const MarkovMonoid& monoid,
                                                        const ProbabilisticAutomaton& automaton) {
  for (const auto& e : monoid.elements()) {
    if (is_value1_witness(e.matrix, automaton)) return e;
  }
  return std::nullopt;
}

/// One line per element: row-major bitstring, then the witness expression.
inline void write_monoid_dump(std::ostream& out, const MarkovMonoid& monoid) {
  for (const auto& e : monoid.elements()) out << e.matrix.bitstring() << ' ' << to_string(e.witness) << '\n';
}

}  // namespace stochmon
