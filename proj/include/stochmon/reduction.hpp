#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stochmon/automaton.hpp"
#include "stochmon/convergence.hpp"
#include "stochmon/errors.hpp"
#include "stochmon/factorial.hpp"
#include "stochmon/schedule.hpp"

namespace stochmon {

inline constexpr const char* check_letter = "check";
inline constexpr const char* end_letter = "end";

/// Where a state of the reduced automaton comes from.
struct StateTag {
  enum class Kind { start, sink, accept, copy };
  enum class Side { left, right };

  Kind kind;
  std::size_t state = 0;  // index in the source automaton, for copies
  Side side = Side::left;
};

struct ReductionOutput {
  ProbabilisticAutomaton automaton;
  std::vector<StateTag> state_map;  // indexed like automaton.states()

  std::size_t start_state() const { return 0; }
  std::size_t sink_state() const { return 1; }
  std::size_t accept_state() const { return 2; }
  std::size_t copy_state(std::size_t q, StateTag::Side side, std::size_t source_size) const {
    return 3 + q + (side == StateTag::Side::right ? source_size : 0);
  }
};

/// Index of the unique initial state; PreconditionError otherwise.
inline std::size_t unique_initial_state(const ProbabilisticAutomaton& a) {
  std::size_t found = a.size();
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a.initial()[s] == 0.0) continue;
    if (found != a.size() || std::abs(a.initial()[s] - 1.0) > StochasticMatrix::row_tolerance) {
      throw PreconditionError("the initial vector must be a unit vector (unique initial state)");
    }
    found = s;
  }
  return found;
}

/// Builds B over A + {check, end} with states {p0, bot, qF} + Q x {L, R}.
/// p0 loops on A-letters and end, and check splits it evenly onto (q0,L) and
/// (q0,R). A-letters act on both copies as in A. end sends final L-states and
/// non-final R-states back to (q0, same side) and everything else to p0.
/// check sends (q0,L) to qF and every other copy state to bot. qF and bot
/// absorb.
inline ReductionOutput build_reduction(const ProbabilisticAutomaton& a) {
  const std::size_t q0 = unique_initial_state(a);
  for (const char* reserved : {check_letter, end_letter}) {
    if (a.letter_index(reserved)) {
      throw PreconditionError(std::string("letter '") + reserved + "' is reserved by the reduction");
    }
  }
  using Side = StateTag::Side;
  const std::size_t n = a.size();
  const std::size_t dim = 2 * n + 3;
  constexpr std::size_t p0 = 0, bot = 1, qf = 2;
  auto copy = [n](std::size_t q, Side side) { return 3 + q + (side == Side::right ? n : 0); };

  std::vector<std::string> states = {"p0", "bot", "qF"};
  std::vector<StateTag> tags = {{StateTag::Kind::start}, {StateTag::Kind::sink}, {StateTag::Kind::accept}};
  for (Side side : {Side::left, Side::right}) {
    for (std::size_t q = 0; q < n; ++q) {
      states.push_back("(" + a.states()[q] + "," + (side == Side::left ? "L" : "R") + ")");
      tags.push_back({StateTag::Kind::copy, q, side});
    }
  }

  auto with_sinks = [&](Matrix m) {
    m(bot, bot) = 1.0;
    m(qf, qf) = 1.0;
    return m;
  };

  std::vector<std::string> alphabet = a.alphabet();
  std::vector<StochasticMatrix> transitions;
  for (const auto& phi : a.transitions()) {
    Matrix m(dim);
    m(p0, p0) = 1.0;
    for (Side side : {Side::left, Side::right})
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t r = 0; r < n; ++r) m(copy(q, side), copy(r, side)) = phi(q, r);
    transitions.emplace_back(with_sinks(std::move(m)));
  }

  Matrix check(dim);
  check(p0, copy(q0, Side::left)) = 0.5;
  check(p0, copy(q0, Side::right)) = 0.5;
  for (std::size_t q = 0; q < n; ++q) {
    check(copy(q, Side::left), q == q0 ? qf : bot) = 1.0;
    check(copy(q, Side::right), bot) = 1.0;
  }
  alphabet.emplace_back(check_letter);
  transitions.emplace_back(with_sinks(std::move(check)));

  Matrix end(dim);
  end(p0, p0) = 1.0;
  for (std::size_t q = 0; q < n; ++q) {
    const bool accepting = a.final_states()[q];
    end(copy(q, Side::left), accepting ? copy(q0, Side::left) : p0) = 1.0;
    end(copy(q, Side::right), accepting ? p0 : copy(q0, Side::right)) = 1.0;
  }
  alphabet.emplace_back(end_letter);
  transitions.emplace_back(with_sinks(std::move(end)));

  std::vector<double> initial(dim, 0.0);
  initial[p0] = 1.0;
  std::vector<bool> finals(dim, false);
  finals[qf] = true;
  return {ProbabilisticAutomaton(std::move(states), std::move(alphabet), std::move(transitions), std::move(initial),
                                 std::move(finals)),
          std::move(tags)};
}

/// state_map sidecar: B-state name -> "p0" | "bot" | "qF" | [q, "L"|"R"].
inline nlohmann::json state_map_to_json(const ReductionOutput& out, const ProbabilisticAutomaton& source) {
  nlohmann::json map = nlohmann::json::object();
  for (std::size_t i = 0; i < out.state_map.size(); ++i) {
    const auto& tag = out.state_map[i];
    const auto& name = out.automaton.states()[i];
    switch (tag.kind) {
      case StateTag::Kind::start: map[name] = "p0"; break;
      case StateTag::Kind::sink: map[name] = "bot"; break;
      case StateTag::Kind::accept: map[name] = "qF"; break;
      case StateTag::Kind::copy:
        map[name] = nlohmann::json::array({source.states()[tag.state], tag.side == StateTag::Side::left ? "L" : "R"});
        break;
    }
  }
  return map;
}

/// Probability of winning one of N rounds, each won with probability p, lost
/// with probability q and otherwise repeated, when only the first N-1 rounds
/// are checked: 1/(1 + q/p) * (1 - (1 - (p+q))^(N-1)).
inline double round_formula(double p, double q, const BigInt& rounds) {
  if (!(p > 0.0) || p > 0.5) throw std::domain_error("round_formula requires 0 < p <= 1/2");
  if (!(q >= 0.0) || q > 0.5) throw std::domain_error("round_formula requires 0 <= q <= 1/2");
  if (rounds < 1) throw std::domain_error("round_formula requires N >= 1");
  if (rounds == 1) return 0.0;
  const double continue_log = std::log1p(-(p + q));
  const double tail = std::exp(to_double(rounds - 1) * continue_log);
  return (1.0 - tail) / (1.0 + q / p);
}

struct RoundParameters {
  std::size_t n;
  BigInt k;       // repetitions of w.end per round
  BigInt rounds;  // N
};

/// k = f_P(n (|w|+1)), N = f_SP(n (1 + k (|w|+1))) for n = 1..n_max.
inline std::vector<RoundParameters> reduction_schedule(std::size_t word_length, std::size_t n_max) {
  std::vector<RoundParameters> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const BigInt block = word_length + 1;
    BigInt k = poly_factorial(BigInt(n) * block);
    BigInt rounds = superpoly_factorial(BigInt(n) * (1 + k * block));
    out.push_back({n, std::move(k), std::move(rounds)});
  }
  return out;
}

struct ReductionRow {
  RoundParameters parameters;
  BigInt length;
  double matrix_probability;
  double formula_probability;
  double discrepancy;
};

struct ReductionReport {
  double source_probability;  // x = Pr_A(w)
  std::vector<ReductionRow> rows;
  ConvergenceReport convergence;
};

/// (check (w end)^k)^N as a schedule over B's alphabet.
inline WordSchedule reduction_word(const Word& w, const BigInt& k, const BigInt& rounds) {
  Word block = w;
  block.emplace_back(end_letter);
  const auto round = concat_schedules(WordSchedule::literal({check_letter}), WordSchedule::power(WordSchedule::literal(block), k));
  return WordSchedule::power(round, rounds);
}

/// Evaluates Pr_B((check (w end)^k)^N) along `schedule` by matrix powering on
/// the reduced automaton and by the closed round formula with
/// p = x^k / 2, q = (1-x)^k / 2.
inline ReductionReport verify_reduction(const ProbabilisticAutomaton& a, const Word& w,
                                        std::span<const RoundParameters> schedule) {
  const auto reduced = build_reduction(a);
  ReductionReport report;
  report.source_probability = acceptance_probability(a, w);
  const double x = report.source_probability;
  report.convergence.kind = ConvergenceReport::Kind::probability;
  for (const auto& params : schedule) {
    const auto word = reduction_word(w, params.k, params.rounds);
    const double by_matrix = accepted_power_probability(reduced.automaton, word);
    const double k = to_double(params.k);
    const double p = 0.5 * std::pow(x, k);
    const double q = 0.5 * std::pow(1.0 - x, k);
    const double by_formula = p > 0.0 ? round_formula(p, q, params.rounds) : 0.0;
    report.rows.push_back({params, word.length(), by_matrix, by_formula, std::abs(by_matrix - by_formula)});
    report.convergence.samples.push_back({params.n, word.length(), by_matrix});
  }
  report.convergence.extrapolated_limit = std::clamp(extrapolate_limit(report.convergence.samples), 0.0, 1.0);
  report.convergence.rate_fit = fit_report(report.convergence);
  return report;
}

/// Five states p0, qL, qR, acc, rej over {a, b}. b splits p0 evenly onto qL
/// and qR and moves qL to acc, qR to rej. a fixes p0, keeps qL with
/// probability x and qR with probability 1-x, otherwise returning to p0.
/// acc and rej absorb. p0 is initial and acc final.
inline ProbabilisticAutomaton counterexample_automaton(double x) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("counterexample parameter must lie in (0, 1)");
  auto a = StochasticMatrix::from_rows({{1, 0, 0, 0, 0},
                                        {1 - x, x, 0, 0, 0},
                                        {x, 0, 1 - x, 0, 0},
                                        {0, 0, 0, 1, 0},
                                        {0, 0, 0, 0, 1}});
  auto b = StochasticMatrix::from_rows({{0, 0.5, 0.5, 0, 0},
                                        {0, 0, 0, 1, 0},
                                        {0, 0, 0, 0, 1},
                                        {0, 0, 0, 1, 0},
                                        {0, 0, 0, 0, 1}});
  return ProbabilisticAutomaton({"p0", "qL", "qR", "acc", "rej"}, {"a", "b"}, {std::move(a), std::move(b)},
                                {1, 0, 0, 0, 0}, {false, false, false, true, false});
}

}  // namespace stochmon
