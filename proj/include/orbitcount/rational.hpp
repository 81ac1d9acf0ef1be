#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace oc {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline Rational rat_from_long(long num, unsigned long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline double rat_double(const Rational& r) { return r.get_d(); }

inline bool rat_is_zero(const Rational& r) { return sgn(r) == 0; }

// lcm of denominators of a rational vector
inline Integer denominator_lcm(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& r : v) {
    Integer d = r.get_den();
    Integer g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  return l;
}

}  // namespace oc
