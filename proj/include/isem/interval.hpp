#pragma once

#include "isem/fpformat.hpp"

#include <compare>

namespace isem {

// Extended real: a rational, or one of the two infinities.
struct ExtReal {
    enum class Kind : std::uint8_t { neg_inf, finite, pos_inf };

    Kind kind = Kind::finite;
    Rational value;

    ExtReal() = default;
    ExtReal(Rational v) : kind(Kind::finite), value(std::move(v)) {} // NOLINT(google-explicit-constructor)
    static ExtReal neg_infinity() { return ExtReal(Kind::neg_inf); }
    static ExtReal pos_infinity() { return ExtReal(Kind::pos_inf); }

    bool is_finite() const { return kind == Kind::finite; }
    int sign() const;

    friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b);
    friend bool operator==(const ExtReal& a, const ExtReal& b) { return (a <=> b) == 0; }

private:
    explicit ExtReal(Kind k) : kind(k) {}
};

enum class OpKind { add, sub, mul, div };
using IntervalOpKind = OpKind;

const char* to_string(OpKind op);
char op_symbol(OpKind op);

// Closed connected set of reals with bounds in one FloatFormat. Non-empty
// values keep lo <= hi, lo finite or -inf, hi finite or +inf. Zero bounds
// are stored as +0.
class ExtInterval {
public:
    static ExtInterval empty(const FloatFormat& f);
    static ExtInterval entire(const FloatFormat& f);
    // [x, x]; x must be finite.
    static ExtInterval point(const Fp& x);
    // Throws std::invalid_argument on NaN bounds, lo = +inf, hi = -inf,
    // lo > hi or mismatched formats.
    static ExtInterval from_bounds(const Fp& lo, const Fp& hi);

    bool is_empty() const { return empty_; }
    const FloatFormat& format() const { return lo_.format(); }
    // Only meaningful when not empty.
    const Fp& lo() const { return lo_; }
    const Fp& hi() const { return hi_; }
    bool bounded_below() const { return !empty_ && !lo_.is_inf(); }
    bool bounded_above() const { return !empty_ && !hi_.is_inf(); }
    bool is_point() const { return !empty_ && lo_.is_finite() && lo_ == hi_; }
    bool is_entire() const { return !empty_ && lo_.is_inf() && hi_.is_inf(); }
    bool contains_zero() const;

    ExtReal lo_real() const;
    ExtReal hi_real() const;

    friend bool operator==(const ExtInterval&, const ExtInterval&) = default;

private:
    ExtInterval(bool empty, const Fp& lo, const Fp& hi) : empty_(empty), lo_(lo), hi_(hi) {}

    bool empty_;
    Fp lo_;
    Fp hi_;
};

// Least floating-point interval containing [lo, hi]: lower bound rounded
// toward -inf, upper toward +inf. Requires lo <= hi, lo != +inf, hi != -inf.
ExtInterval hull(const ExtReal& lo, const ExtReal& hi, const FloatFormat& f);

// Relational interval operations: hull of {z | exists x in X, y in Y with
// x+y = z, y+z = x, x*y = z, y*z = x}. Total; Empty propagates.
ExtInterval iv_add(const ExtInterval& x, const ExtInterval& y);
ExtInterval iv_sub(const ExtInterval& x, const ExtInterval& y);
ExtInterval iv_mul(const ExtInterval& x, const ExtInterval& y);
ExtInterval iv_div(const ExtInterval& x, const ExtInterval& y);
ExtInterval iv_apply(OpKind op, const ExtInterval& x, const ExtInterval& y);
ExtInterval iv_neg(const ExtInterval& x);

bool iv_member(const Rational& q, const ExtInterval& x);
bool iv_subset(const ExtInterval& x, const ExtInterval& y);

} // namespace isem
