#ifndef BRAIDCX_RATIONAL_HPP
#define BRAIDCX_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

namespace braidcx {

// Exact arbitrary-precision rational. mpq_class keeps values canonical:
// gcd(|num|, den) = 1 and den > 0.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "a", "-a", or "a/b".
inline Rational parse_rational(const std::string& s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace braidcx

#endif
