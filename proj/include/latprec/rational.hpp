#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "latprec/errors.hpp"

namespace latprec {

using Rat = mpq_class;
using Int = mpz_class;

inline double to_double(const Rat& q) { return q.get_d(); }

/// Best rational approximation of x with denominator <= max_den
/// (continued-fraction expansion, exact for representable inputs).
inline Rat rationalize(double x, std::int64_t max_den = 1'000'000) {
  if (!std::isfinite(x)) throw NumericalError("rationalize: non-finite input");
  bool neg = x < 0;
  double a = std::fabs(x);
  // convergents p/q of the continued fraction of a
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = a;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 9e17) break;
    auto ai = static_cast<std::int64_t>(fl);
    if (q0 + ai * q1 > max_den || p1 > (INT64_MAX - p0) / (ai ? ai : 1)) break;
    std::int64_t p2 = ai * p1 + p0;
    std::int64_t q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  Rat r(p1, q1 == 0 ? 1 : q1);
  r.canonicalize();
  if (neg) r = -r;
  return r;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// gmpxx has no long long constructor; fits in long on LP64
inline Rat rat_of(long long v) { return Rat(static_cast<long>(v)); }

}  // namespace latprec
