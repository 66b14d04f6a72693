#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stochmon {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A matrix row that is not a probability distribution.
struct StochasticityError : std::invalid_argument {
  StochasticityError(std::size_t row_index, const std::string& what)
      : std::invalid_argument(what), row(row_index) {}
  std::size_t row;
};

struct UnknownLetter : std::invalid_argument {
  explicit UnknownLetter(std::string letter)
      : std::invalid_argument("unknown letter '" + letter + "'"), token(std::move(letter)) {}
  std::string token;
};

struct ParseError : std::invalid_argument {
  ParseError(std::size_t pos, const std::string& what)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct NonConvergence : std::runtime_error {
  NonConvergence(double distance, const std::string& what)
      : std::runtime_error(what), last_distance(distance) {}
  double last_distance;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace stochmon
