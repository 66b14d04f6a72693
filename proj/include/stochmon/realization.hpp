#pragma once

#include "stochmon/factorial.hpp"
#include "stochmon/omega.hpp"
#include "stochmon/schedule.hpp"

namespace stochmon {

enum class LimitMode { polynomial, superpolynomial };

/// n-th word of the polynomial realization: letters stay letters, products
/// concatenate, and F^w becomes u^f_P(n |u|) with u the realization of F.
inline WordSchedule realize_polynomial(const OmegaExpression& e, const BigInt& n) {
  if (n < 1) throw std::domain_error("realization index must be >= 1");
  using Kind = OmegaExpression::Kind;
  switch (e.kind()) {
    case Kind::letter:
      return WordSchedule::literal({e.token()});
    case Kind::product:
      return concat_schedules(realize_polynomial(e.left(), n), realize_polynomial(e.right(), n));
    case Kind::omega: {
      auto inner = realize_polynomial(e.child(), n);
      auto exponent = poly_factorial(n * inner.length());
      return WordSchedule::power(inner, std::move(exponent));
    }
  }
  throw std::logic_error("unreachable");
}

/// u^f_SP(n |u|) where u is the polynomial realization of E.
inline WordSchedule realize_superpolynomial(const OmegaExpression& e, const BigInt& n) {
  auto inner = realize_polynomial(e, n);
  auto exponent = superpoly_factorial(n * inner.length());
  return WordSchedule::power(inner, std::move(exponent));
}

inline WordSchedule realize(const OmegaExpression& e, const BigInt& n, LimitMode mode) {
  return mode == LimitMode::polynomial ? realize_polynomial(e, n) : realize_superpolynomial(e, n);
}

}  // namespace stochmon
