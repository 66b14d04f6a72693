#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <vector>

#include "stochmon/bigint.hpp"
#include "stochmon/errors.hpp"

namespace stochmon {

/// Dense square matrix over the reals, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) {
        throw DimensionError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                             " entries, expected " + std::to_string(rows.size()));
      }
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.dim_));
    }
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * dim_, dim_);
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

inline Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw DimensionError("matrix product of dimensions " + std::to_string(lhs.dim()) + " and " +
                         std::to_string(rhs.dim()));
  }
  const std::size_t n = lhs.dim();
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

inline Matrix operator-(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.dim() != rhs.dim()) throw DimensionError("matrix difference of unequal dimensions");
  Matrix out(lhs.dim());
  for (std::size_t i = 0; i < lhs.dim(); ++i)
    for (std::size_t j = 0; j < lhs.dim(); ++j) out(i, j) = lhs(i, j) - rhs(i, j);
  return out;
}

/// Maximum absolute row sum. Every row-stochastic matrix has norm 1 under
/// this convention.
inline double matrix_norm(const Matrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    double sum = 0.0;
    for (double v : m.row(i)) sum += std::abs(v);
    best = std::max(best, sum);
  }
  return best;
}

/// Square matrix with non-negative entries and rows summing to one.
class StochasticMatrix {
 public:
  static constexpr double row_tolerance = 1e-9;

  StochasticMatrix() = default;

  /// Validates every row; throws StochasticityError naming the first bad row.
  explicit StochasticMatrix(Matrix m) : m_(std::move(m)) {
    for (std::size_t i = 0; i < m_.dim(); ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < m_.dim(); ++j) {
        const double v = m_(i, j);
        if (!(v >= 0.0) || !std::isfinite(v)) {
          std::ostringstream msg;
          msg << "row " << i << " has invalid entry " << v << " in column " << j;
          throw StochasticityError(i, msg.str());
        }
        sum += v;
      }
      if (std::abs(sum - 1.0) > row_tolerance) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "row " << i << " sums to " << sum << ", expected 1 within " << row_tolerance;
        throw StochasticityError(i, msg.str());
      }
    }
  }

  static StochasticMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    return StochasticMatrix(Matrix::from_rows(rows));
  }

  static StochasticMatrix identity(std::size_t dim) { return {Matrix::identity(dim), Unchecked{}}; }

  std::size_t dim() const noexcept { return m_.dim(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

  friend bool operator==(const StochasticMatrix&, const StochasticMatrix&) = default;

  friend StochasticMatrix operator*(const StochasticMatrix& lhs, const StochasticMatrix& rhs) {
    return {lhs.m_ * rhs.m_, Unchecked{}};
  }

 private:
  struct Unchecked {};
  StochasticMatrix(Matrix m, Unchecked) : m_(std::move(m)) {}

  Matrix m_;
};

/// M^e by binary exponentiation; M^0 is the identity.
inline StochasticMatrix matrix_power(const StochasticMatrix& m, const BigInt& exponent) {
  if (exponent < 0) throw std::domain_error("negative matrix exponent");
  StochasticMatrix result = StochasticMatrix::identity(m.dim());
  if (exponent == 0) return result;
  const auto top = boost::multiprecision::msb(exponent);
  for (auto bit = static_cast<std::ptrdiff_t>(top); bit >= 0; --bit) {
    result = result * result;
    if (boost::multiprecision::bit_test(exponent, static_cast<unsigned>(bit))) result = result * m;
  }
  return result;
}

}  // namespace stochmon
