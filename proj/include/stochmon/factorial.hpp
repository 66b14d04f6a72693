#pragma once

#include <stdexcept>

#include "stochmon/bigint.hpp"

namespace stochmon {

/// Largest factorial k! with k! <= n (n >= 1). Grows roughly linearly.
inline BigInt poly_factorial(const BigInt& n) {
  if (n < 1) throw std::domain_error("poly_factorial requires n >= 1");
  BigInt fact = 1;
  for (unsigned k = 2;; ++k) {
    BigInt next = fact * k;
    if (next > n) return fact;
    fact = std::move(next);
  }
}

/// Bit budget for the super-polynomial threshold 2^(c*c).
inline constexpr std::size_t max_threshold_bits = std::size_t{1} << 18;

/// Largest factorial k! with k! <= 2^(c*c), c = ceil(log2 n). This is the
/// threshold n^(log2 n) rounded up to a power of two so that it is exact.
inline BigInt superpoly_factorial(const BigInt& n) {
  if (n < 1) throw std::domain_error("superpoly_factorial requires n >= 1");
  const std::size_t c = ceil_log2(n);
  if (c > 0 && c > max_threshold_bits / c) {
    throw std::overflow_error("super-polynomial exponent threshold exceeds 2^" + std::to_string(max_threshold_bits));
  }
  const std::size_t bits = c * c;
  // k! <= 2^bits  <=>  msb(k!) < bits, or k! == 2^bits (only 1! and 2!).
  auto fits = [bits](const BigInt& value) {
    const auto top = static_cast<std::size_t>(boost::multiprecision::msb(value));
    if (top < bits) return true;
    return top == bits && value == (BigInt(1) << bits);
  };
  BigInt fact = 1;
  for (unsigned k = 2;; ++k) {
    BigInt next = fact * k;
    if (!fits(next)) return fact;
    fact = std::move(next);
  }
}

}  // namespace stochmon
