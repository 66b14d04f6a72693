#pragma once

#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace stochmon {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& value) { return value.str(); }

/// Nearest double, or +inf when the value is out of range.
inline double to_double(const BigInt& value) {
  if (value > 0 && boost::multiprecision::msb(value) >= 1023) {
    return std::numeric_limits<double>::infinity();
  }
  return value.convert_to<double>();
}

/// ceil(log2(n)) for n >= 1.
inline std::size_t ceil_log2(const BigInt& n) {
  if (n <= 1) return 0;
  const BigInt m = n - 1;
  return static_cast<std::size_t>(boost::multiprecision::msb(m)) + 1;
}

}  // namespace stochmon
