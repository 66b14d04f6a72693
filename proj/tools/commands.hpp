#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>

#include "stochmon/stochmon.hpp"

namespace stochmon::cli {

enum class Command { analyze, monoid, simulate, reduce, example };

struct RunConfig {
  Command command = Command::analyze;
  std::string input_path;
  std::optional<std::string> expression;
  std::optional<std::string> word;
  LimitMode mode = LimitMode::polynomial;
  std::size_t n_max = 12;
  double tol = 1e-10;
  double x = 0.9;
  std::string output = "-";
  bool verify = false;
  bool csv = false;
};

// Exit codes.
inline constexpr int exit_yes = 0;
inline constexpr int exit_no = 1;
inline constexpr int exit_input_error = 2;

namespace detail {

/// Writes to the output path, or to `out` when the path is "-".
template <typename Fn>
void with_output(const RunConfig& config, std::ostream& out, Fn&& write) {
  if (config.output == "-") {
    write(out);
    return;
  }
  std::ofstream file(config.output);
  if (!file) throw std::runtime_error("cannot write '" + config.output + "'");
  write(file);
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }
}

inline void write_repair_hint(std::ostream& err, const ExpressionTypeError& e, const BooleanGenerators& gens) {
  err << "error: " << e.what() << '\n';
  try {
    const auto exponent = idempotent_closure_exponent(e.subexpression, gens);
    std::string inner = to_string(e.subexpression);
    if (e.subexpression.kind() == OmegaExpression::Kind::product) inner = "(" + inner + ")";
    err << "hint: its " << exponent << "-th power is idempotent; try (" << inner << "^" << exponent
        << ")^w, written " << to_string(OmegaExpression::omega(repeat(e.subexpression, exponent))) << '\n';
  } catch (const std::exception&) {
  }
}

}  // namespace detail

/// Runs the Markov Monoid algorithm. Exit 0 on YES, 1 on NO.
inline int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto automaton = load_automaton(config.input_path);
    const auto monoid = markov_monoid(automaton);
    const auto witness = find_value1_witness(monoid, automaton);
    if (!witness) {
      out << "NO\n";
      return exit_no;
    }
    out << "YES\n"
        << "witness: " << to_string(witness->witness) << '\n'
        << "matrix: " << witness->matrix.bitstring() << '\n';
    if (config.verify) {
      const auto report = estimate_limit(automaton, witness->witness, LimitMode::polynomial, std::max<std::size_t>(config.n_max, 3));
      if (config.csv) {
        write_report_csv(out, report);
      } else {
        write_report_text(out, report);
      }
    }
    return exit_yes;
  });
}

/// Dumps every Markov Monoid element with its witness expression.
inline int cmd_monoid(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto automaton = load_automaton(config.input_path);
    const auto monoid = markov_monoid(automaton);
    write_monoid_dump(out, monoid);
    out << "# elements " << monoid.size() << ", generators " << monoid.count(MonoidElement::Origin::generator)
        << ", products " << monoid.count(MonoidElement::Origin::product) << ", stabilizations "
        << monoid.count(MonoidElement::Origin::stabilization) << '\n';
    return 0;
  });
}

/// Convergence table of the realization of an expression.
inline int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto automaton = load_automaton(config.input_path);
    if (!config.expression) throw std::invalid_argument("simulate needs an expression (-e)");
    const auto e = parse_expression(*config.expression, automaton.alphabet());
    const auto gens = boolean_generators(automaton);
    try {
      boolean_interpretation(e, gens);
    } catch (const ExpressionTypeError& type_error) {
      detail::write_repair_hint(err, type_error, gens);
      return exit_input_error;
    }
    const auto report = estimate_limit(automaton, e, config.mode, std::max<std::size_t>(config.n_max, 3));
    if (config.csv) {
      write_report_csv(out, report);
      return 0;
    }
    out << "expression: " << to_string(e) << '\n'
        << "mode: " << (config.mode == LimitMode::polynomial ? "polynomial" : "superpolynomial") << '\n';
    write_report_text(out, report);
    const auto limit = numeric_interpretation(e, automaton, LimitOptions{config.tol});
    out << std::setprecision(12) << "limit-matrix acceptance: " << accepted_mass(automaton, limit) << '\n';
    return 0;
  });
}

/// Writes the reduced automaton with its state_map; with a word, also
/// prints the round-by-round verification table.
inline int cmd_reduce(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto automaton = load_automaton(config.input_path);
    if (config.word && config.output == "-") {
      throw std::invalid_argument("reduce with -w needs -o for the automaton; the table goes to standard output");
    }
    const auto reduced = build_reduction(automaton);
    auto doc = automaton_to_json(reduced.automaton);
    doc["state_map"] = state_map_to_json(reduced, automaton);
    detail::with_output(config, out, [&](std::ostream& os) { os << std::setw(2) << doc << '\n'; });
    if (config.word) {
      const auto w = parse_word(*config.word, automaton.alphabet());
      const auto schedule = reduction_schedule(w.size(), config.n_max);
      const auto report = verify_reduction(automaton, w, schedule);
      out << std::setprecision(12) << "x = Pr_A(w) = " << report.source_probability << '\n';
      out << "n,k,N,length,matrix,formula,discrepancy\n";
      for (const auto& row : report.rows) {
        out << row.parameters.n << ',' << to_string(row.parameters.k) << ',' << to_string(row.parameters.rounds)
            << ',' << to_string(row.length) << ',' << row.matrix_probability << ',' << row.formula_probability
            << ',' << row.discrepancy << '\n';
      }
    }
    return 0;
  });
}

/// Writes the two-sided counterexample automaton for parameter x.
inline int cmd_example(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto automaton = counterexample_automaton(config.x);
    detail::with_output(config, out, [&](std::ostream& os) { write_automaton(os, automaton); });
    return 0;
  });
}

inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  switch (config.command) {
    case Command::analyze: return cmd_analyze(config, out, err);
    case Command::monoid: return cmd_monoid(config, out, err);
    case Command::simulate: return cmd_simulate(config, out, err);
    case Command::reduce: return cmd_reduce(config, out, err);
    case Command::example: return cmd_example(config, out, err);
  }
  return exit_input_error;
}

}  // namespace stochmon::cli
