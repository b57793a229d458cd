#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rht {

// Exact arithmetic everywhere: arbitrary-precision integers and rationals.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

// (-1)^k for possibly negative k.
inline int parity_sign(long k) { return (k % 2 == 0) ? 1 : -1; }

inline Int int_pow(const Int& base, unsigned long e) {
  Int r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Rational rational_pow(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("rational_pow: 0 to negative power");
    Rational inv = Rational(boost::multiprecision::denominator(base),
                            boost::multiprecision::numerator(base));
    return rational_pow(inv, -e);
  }
  Rational r = 1, b = base;
  unsigned long ee = static_cast<unsigned long>(e);
  while (ee) {
    if (ee & 1) r *= b;
    b *= b;
    ee >>= 1;
  }
  return r;
}

// Convert Int to int64, asserting no overflow (used by the JSON layer).
inline std::int64_t checked_int64(const Int& v, const char* what = "integer") {
  if (v > Int(INT64_MAX) || v < Int(INT64_MIN))
    throw std::overflow_error(std::string(what) + " exceeds 64-bit range in serialization");
  return static_cast<std::int64_t>(v);
}

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace rht
