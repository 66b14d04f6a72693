#pragma once

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "stochmon/automaton.hpp"

namespace stochmon {

/// Malformed automaton file.
struct AutomatonFormatError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline ProbabilisticAutomaton automaton_from_json(const nlohmann::json& doc) {
  using nlohmann::json;
  if (!doc.is_object()) throw AutomatonFormatError("automaton file must contain a JSON object");
  for (const char* key : {"states", "alphabet", "initial", "final", "transitions"}) {
    if (!doc.contains(key)) throw AutomatonFormatError(std::string("missing field '") + key + "'");
  }
  try {
    auto states = doc.at("states").get<std::vector<std::string>>();
    auto alphabet = doc.at("alphabet").get<std::vector<std::string>>();
    auto initial = doc.at("initial").get<std::vector<double>>();
    auto finals = doc.at("final").get<std::vector<bool>>();
    const auto& table = doc.at("transitions");
    if (!table.is_object()) throw AutomatonFormatError("'transitions' must map letters to matrices");
    for (const auto& [letter, _] : table.items()) {
      if (std::find(alphabet.begin(), alphabet.end(), letter) == alphabet.end()) {
        throw AutomatonFormatError("transitions given for letter '" + letter + "' outside the alphabet");
      }
    }
    std::vector<StochasticMatrix> transitions;
    for (const auto& letter : alphabet) {
      if (!table.contains(letter)) throw AutomatonFormatError("no transitions for letter '" + letter + "'");
      const auto rows = table.at(letter).get<std::vector<std::vector<double>>>();
      if (rows.size() != states.size()) {
        throw AutomatonFormatError("transitions of letter '" + letter + "' have " + std::to_string(rows.size()) +
                                   " rows, expected " + std::to_string(states.size()));
      }
      try {
        transitions.push_back(StochasticMatrix::from_rows(rows));
      } catch (const StochasticityError& e) {
        throw AutomatonFormatError("letter '" + letter + "', " + e.what() + " (state '" + states[e.row] + "')");
      } catch (const DimensionError& e) {
        throw AutomatonFormatError("letter '" + letter + "': " + e.what());
      }
    }
    return ProbabilisticAutomaton(std::move(states), std::move(alphabet), std::move(transitions),
                                  std::move(initial), std::move(finals));
  } catch (const json::exception& e) {
    throw AutomatonFormatError(std::string("malformed automaton: ") + e.what());
  } catch (const AutomatonFormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw AutomatonFormatError(e.what());
  }
}

inline nlohmann::json automaton_to_json(const ProbabilisticAutomaton& automaton) {
  nlohmann::json doc;
  doc["states"] = automaton.states();
  doc["alphabet"] = automaton.alphabet();
  doc["initial"] = automaton.initial();
  std::vector<bool> finals = automaton.final_states();
  doc["final"] = finals;
  nlohmann::json table = nlohmann::json::object();
  for (std::size_t a = 0; a < automaton.alphabet().size(); ++a) {
    const auto& m = automaton.transitions()[a];
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
      rows.push_back(std::vector<double>(m.matrix().row(i).begin(), m.matrix().row(i).end()));
    }
    table[automaton.alphabet()[a]] = std::move(rows);
  }
  doc["transitions"] = std::move(table);
  doc["strict"] = automaton.is_strict();
  return doc;
}

inline ProbabilisticAutomaton read_automaton(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw AutomatonFormatError(std::string("invalid JSON: ") + e.what());
  }
  return automaton_from_json(doc);
}

inline ProbabilisticAutomaton load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_automaton(in);
}

inline void write_automaton(std::ostream& out, const ProbabilisticAutomaton& automaton) {
  out << std::setw(2) << automaton_to_json(automaton) << '\n';
}

}  // namespace stochmon
