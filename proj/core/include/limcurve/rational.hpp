#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace limcurve {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or a plain decimal such as "-0.75". Throws Error(parse).
Rational parse_rational(std::string_view text);

/// Parses a nonnegative decimal integer. Throws Error(parse).
Integer parse_integer(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& x);

/// Fixed-point rendering with `digits` digits after the point, rounded half away
/// from zero. Exact: no floating point is involved.
std::string to_decimal(const Rational& x, int digits);

/// num/den in canonical form.
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& base, long exponent);
Integer pow2(std::uint64_t exponent);

/// floor(x) as an integer.
Integer floor(const Rational& x);

/// True when x > 0 and x is a power of two.
bool is_pow2(const Integer& x);

/// Number of bits needed to represent x >= 0 (0 for x = 0).
std::size_t bit_length(const Integer& x);

/// Conversion rounding toward zero, so repeated runs produce identical bits.
inline double to_double(const Rational& x) { return x.get_d(); }

}  // namespace limcurve
