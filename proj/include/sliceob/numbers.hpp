#pragma once

#include <gmpxx.h>

#include <numeric>
#include <string>

#include "sliceob/errors.hpp"

namespace sliceob {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational.
inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0)
    fail(ErrorCode::ParseError, "not a rational number: '" + text + "'");
  if (q.get_den() == 0)
    fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string format_rational(const Rational& q) { return q.get_str(10); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Non-negative residue of a modulo n (n > 0).
inline long mod_floor(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// True when n = p^a for some a >= 0.
inline bool is_power_of(const Integer& n, long p) {
  if (n <= 0) return false;
  Integer m = n;
  while (m % p == 0) m /= p;
  return m == 1;
}

}  // namespace sliceob
