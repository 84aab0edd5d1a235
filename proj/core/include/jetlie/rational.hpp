#pragma once

#include <gmpxx.h>

#include <string>

namespace jetlie {

/// Exact arbitrary-precision rational. Always kept canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Exact rational value of a finite double (binary fraction).
inline Rational rational_from_double(double v) {
  Rational r(v);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace jetlie
