#pragma once

#include <gmpxx.h>

#include <string>

namespace isem {

// Exact rational number in canonical form (denominator > 0, gcd 1). Every
// finite value of every supported float format embeds exactly.
using Rational = mpq_class;

// 2^k for any integer k.
Rational pow2(long k);

inline int sign(const Rational& q) { return sgn(q); }

// "n/d", or "n" when the denominator is 1.
std::string to_string(const Rational& q);

// True iff the denominator is a power of two.
bool is_dyadic(const Rational& q);

} // namespace isem
