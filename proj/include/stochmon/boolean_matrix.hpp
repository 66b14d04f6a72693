#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stochmon/errors.hpp"
#include "stochmon/matrix.hpp"

namespace stochmon {

/// Raised when the stabilization of a non-idempotent matrix is requested.
struct IdempotenceError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Square 0/1 matrix; row i is stored as a bitmask over columns.
class BooleanMatrix {
 public:
  static constexpr std::size_t max_dim = 64;

  BooleanMatrix() = default;
  explicit BooleanMatrix(std::size_t dim) : rows_(dim, 0) {
    if (dim > max_dim) throw DimensionError("boolean matrices are limited to 64 states");
  }

  static BooleanMatrix identity(std::size_t dim) {
    BooleanMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.rows_[i] = bit(i);
    return m;
  }

  /// Parses a row-major string of '0'/'1' of length dim*dim.
  static BooleanMatrix from_bitstring(std::string_view bits) {
    std::size_t dim = 0;
    while (dim * dim < bits.size()) ++dim;
    if (dim * dim != bits.size()) throw DimensionError("bitstring length is not a square");
    BooleanMatrix m(dim);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1') throw std::invalid_argument("bitstring must contain only 0 and 1");
      m.set(i / dim, i % dim, bits[i] == '1');
    }
    return m;
  }

  std::size_t dim() const noexcept { return rows_.size(); }

  bool operator()(std::size_t i, std::size_t j) const { return (rows_[i] >> j) & 1U; }

  void set(std::size_t i, std::size_t j, bool value) {
    if (value) {
      rows_[i] |= bit(j);
    } else {
      rows_[i] &= ~bit(j);
    }
  }

  std::uint64_t row(std::size_t i) const { return rows_[i]; }
  void set_row(std::size_t i, std::uint64_t mask) { rows_[i] = mask; }

  std::string bitstring() const {
    std::string out;
    out.reserve(dim() * dim());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) out.push_back((*this)(i, j) ? '1' : '0');
    return out;
  }

  friend bool operator==(const BooleanMatrix&, const BooleanMatrix&) = default;
  friend auto operator<=>(const BooleanMatrix&, const BooleanMatrix&) = default;

  static constexpr std::uint64_t bit(std::size_t j) { return std::uint64_t{1} << j; }

 private:
  std::vector<std::uint64_t> rows_;
};

struct BooleanMatrixHash {
  std::size_t operator()(const BooleanMatrix& m) const noexcept {
    std::size_t h = m.dim();
    for (std::size_t i = 0; i < m.dim(); ++i) {
      h ^= std::hash<std::uint64_t>{}(m.row(i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

inline BooleanMatrix operator*(const BooleanMatrix& lhs, const BooleanMatrix& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw DimensionError("boolean product of dimensions " + std::to_string(lhs.dim()) + " and " +
                         std::to_string(rhs.dim()));
  }
  BooleanMatrix out(lhs.dim());
  for (std::size_t i = 0; i < lhs.dim(); ++i) {
    std::uint64_t acc = 0;
    for (std::uint64_t mask = lhs.row(i); mask != 0; mask &= mask - 1) {
      acc |= rhs.row(static_cast<std::size_t>(std::countr_zero(mask)));
    }
    out.set_row(i, acc);
  }
  return out;
}

inline bool is_idempotent(const BooleanMatrix& m) { return m * m == m; }

/// Bitmask of the M-recurrent states: t is recurrent when every state
/// reachable from t in one step reaches t back in one step.
inline std::uint64_t recurrent_states(const BooleanMatrix& m) {
  std::uint64_t recurrent = 0;
  for (std::size_t t = 0; t < m.dim(); ++t) {
    bool ok = true;
    for (std::uint64_t mask = m.row(t); mask != 0 && ok; mask &= mask - 1) {
      ok = m(static_cast<std::size_t>(std::countr_zero(mask)), t);
    }
    if (ok) recurrent |= BooleanMatrix::bit(t);
  }
  return recurrent;
}

/// M# keeps the edges of M that end in an M-recurrent state. Only defined
/// for idempotent M.
inline BooleanMatrix stabilization(const BooleanMatrix& m) {
  if (!is_idempotent(m)) throw IdempotenceError("stabilization of a non-idempotent matrix " + m.bitstring());
  const std::uint64_t recurrent = recurrent_states(m);
  BooleanMatrix out(m.dim());
  for (std::size_t s = 0; s < m.dim(); ++s) out.set_row(s, m.row(s) & recurrent);
  return out;
}

/// Support of M: entries strictly greater than `threshold` (zero by default).
inline BooleanMatrix boolean_projection(const Matrix& m, double threshold = 0.0) {
  BooleanMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out.set(i, j, m(i, j) > threshold);
  return out;
}

inline BooleanMatrix boolean_projection(const StochasticMatrix& m, double threshold = 0.0) {
  return boolean_projection(m.matrix(), threshold);
}

}  // namespace stochmon
