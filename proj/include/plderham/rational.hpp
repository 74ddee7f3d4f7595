#pragma once

#include <gmpxx.h>

#include <string>

namespace plderham {

// Exact rational scalar. Everything downstream (polynomials, differentials,
// cohomology ranks) is computed over this type, so all tests are bit-exact.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string rational_str(const Rational& r) { return r.get_str(); }

// Accepts "n" or "n/d"; throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

Integer factorial(int n);

}  // namespace plderham
