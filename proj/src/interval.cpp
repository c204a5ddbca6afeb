#include "isem/interval.hpp"

#include <algorithm>
#include <array>

namespace isem {

int ExtReal::sign() const
{
    switch (kind) {
    case Kind::neg_inf:
        return -1;
    case Kind::pos_inf:
        return 1;
    case Kind::finite:
        break;
    }
    return sgn(value);
}

std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b)
{
    if (a.kind != b.kind || !a.is_finite())
        return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
    return cmp(a.value, b.value) <=> 0;
}

const char* to_string(OpKind op)
{
    switch (op) {
    case OpKind::add:
        return "add";
    case OpKind::sub:
        return "sub";
    case OpKind::mul:
        return "mul";
    case OpKind::div:
        return "div";
    }
    return "?";
}

char op_symbol(OpKind op)
{
    switch (op) {
    case OpKind::add:
        return '+';
    case OpKind::sub:
        return '-';
    case OpKind::mul:
        return '*';
    case OpKind::div:
        return '/';
    }
    return '?';
}

ExtInterval ExtInterval::empty(const FloatFormat& f)
{
    return ExtInterval(true, Fp::nan(f), Fp::nan(f));
}

ExtInterval ExtInterval::entire(const FloatFormat& f)
{
    return ExtInterval(false, Fp::infinity(f, true), Fp::infinity(f, false));
}

ExtInterval ExtInterval::point(const Fp& x)
{
    if (!x.is_finite())
        throw std::invalid_argument("point interval needs a finite value");
    return from_bounds(x, x);
}

ExtInterval ExtInterval::from_bounds(const Fp& lo, const Fp& hi)
{
    if (lo.format() != hi.format())
        throw std::invalid_argument("interval bounds from different formats");
    if (lo.is_nan() || hi.is_nan())
        throw std::invalid_argument("NaN interval bound");
    if (lo.is_pos_inf() || hi.is_neg_inf())
        throw std::invalid_argument("interval lower bound +inf or upper bound -inf");
    if (compare(lo, hi) > 0)
        throw std::invalid_argument("interval lower bound exceeds upper bound");
    const Fp l = lo.is_zero() ? Fp::zero(lo.format()) : lo;
    const Fp h = hi.is_zero() ? Fp::zero(hi.format()) : hi;
    return ExtInterval(false, l, h);
}

bool ExtInterval::contains_zero() const
{
    const Fp zero = Fp::zero(format());
    return !empty_ && compare(lo_, zero) <= 0 && compare(hi_, zero) >= 0;
}

ExtReal ExtInterval::lo_real() const
{
    return lo_.is_inf() ? ExtReal::neg_infinity() : ExtReal(to_rational(lo_));
}

ExtReal ExtInterval::hi_real() const
{
    return hi_.is_inf() ? ExtReal::pos_infinity() : ExtReal(to_rational(hi_));
}

ExtInterval hull(const ExtReal& lo, const ExtReal& hi, const FloatFormat& f)
{
    if (lo.kind == ExtReal::Kind::pos_inf || hi.kind == ExtReal::Kind::neg_inf)
        throw std::invalid_argument("hull: lower bound +inf or upper bound -inf");
    if (lo > hi)
        throw std::invalid_argument("hull: lower bound exceeds upper bound");
    const Fp l = lo.is_finite() ? round(lo.value, RoundingDirection::toward_neg_inf, f)
                                : Fp::infinity(f, true);
    const Fp h = hi.is_finite() ? round(hi.value, RoundingDirection::toward_pos_inf, f)
                                : Fp::infinity(f, false);
    return ExtInterval::from_bounds(l, h);
}

namespace {

void require_same_format(const ExtInterval& x, const ExtInterval& y)
{
    if (x.format() != y.format())
        throw std::invalid_argument("interval operands from different formats");
}

ExtReal negate(const ExtReal& a)
{
    switch (a.kind) {
    case ExtReal::Kind::neg_inf:
        return ExtReal::pos_infinity();
    case ExtReal::Kind::pos_inf:
        return ExtReal::neg_infinity();
    case ExtReal::Kind::finite:
        break;
    }
    return ExtReal(Rational(-a.value));
}

// Bound-level sum; never called with opposite infinities.
ExtReal add(const ExtReal& a, const ExtReal& b)
{
    if (!a.is_finite())
        return a;
    if (!b.is_finite())
        return b;
    return ExtReal(Rational(a.value + b.value));
}

// Bound-level product with 0 * (+-inf) = 0.
ExtReal mul(const ExtReal& a, const ExtReal& b)
{
    const int sa = a.sign(), sb = b.sign();
    if (sa == 0 || sb == 0)
        return ExtReal(Rational(0));
    if (!a.is_finite() || !b.is_finite())
        return sa * sb > 0 ? ExtReal::pos_infinity() : ExtReal::neg_infinity();
    return ExtReal(Rational(a.value * b.value));
}

// Bound-level quotient for a nonzero divisor: finite / inf = 0.
ExtReal div(const ExtReal& a, const ExtReal& b)
{
    if (!b.is_finite())
        return ExtReal(Rational(0));
    if (!a.is_finite())
        return a.sign() * b.sign() > 0 ? ExtReal::pos_infinity() : ExtReal::neg_infinity();
    return ExtReal(Rational(a.value / b.value));
}

// Bound-level quotient where the divisor bound is a one-sided limit at zero.
ExtReal div_by_zero_side(const ExtReal& a, int divisor_side)
{
    return a.sign() * divisor_side > 0 ? ExtReal::pos_infinity() : ExtReal::neg_infinity();
}

// X / Y with every y > 0.
ExtInterval div_positive(const ExtInterval& x, const ExtReal& yl, const ExtReal& yh, const FloatFormat& f)
{
    const ExtReal xl = x.lo_real(), xh = x.hi_real();
    if (xl.sign() >= 0)
        return hull(div(xl, yh), div(xh, yl), f);
    if (xh.sign() <= 0)
        return hull(div(xl, yl), div(xh, yh), f);
    return hull(div(xl, yl), div(xh, yl), f);
}

} // namespace

ExtInterval iv_add(const ExtInterval& x, const ExtInterval& y)
{
    require_same_format(x, y);
    const FloatFormat& f = x.format();
    if (x.is_empty() || y.is_empty())
        return ExtInterval::empty(f);
    if (x.is_point() && y.is_point()) {
        ExtReal s(Rational(to_rational(x.lo()) + to_rational(y.lo())));
        return hull(s, s, f);
    }
    return hull(add(x.lo_real(), y.lo_real()), add(x.hi_real(), y.hi_real()), f);
}

ExtInterval iv_sub(const ExtInterval& x, const ExtInterval& y)
{
    require_same_format(x, y);
    const FloatFormat& f = x.format();
    if (x.is_empty() || y.is_empty())
        return ExtInterval::empty(f);
    if (x.is_point() && y.is_point()) {
        ExtReal d(Rational(to_rational(x.lo()) - to_rational(y.lo())));
        return hull(d, d, f);
    }
    return hull(add(x.lo_real(), negate(y.hi_real())), add(x.hi_real(), negate(y.lo_real())), f);
}

ExtInterval iv_mul(const ExtInterval& x, const ExtInterval& y)
{
    require_same_format(x, y);
    const FloatFormat& f = x.format();
    if (x.is_empty() || y.is_empty())
        return ExtInterval::empty(f);
    if (x.is_point() && y.is_point()) {
        ExtReal p(Rational(to_rational(x.lo()) * to_rational(y.lo())));
        return hull(p, p, f);
    }
    const ExtReal xl = x.lo_real(), xh = x.hi_real(), yl = y.lo_real(), yh = y.hi_real();
    const std::array<ExtReal, 4> products{mul(xl, yl), mul(xl, yh), mul(xh, yl), mul(xh, yh)};
    const auto [lo, hi] = std::minmax_element(products.begin(), products.end());
    return hull(*lo, *hi, f);
}

ExtInterval iv_div(const ExtInterval& x, const ExtInterval& y)
{
    require_same_format(x, y);
    const FloatFormat& f = x.format();
    if (x.is_empty() || y.is_empty())
        return ExtInterval::empty(f);
    if (x.is_point() && y.is_point() && !y.lo().is_zero()) {
        ExtReal q(Rational(to_rational(x.lo()) / to_rational(y.lo())));
        return hull(q, q, f);
    }

    const ExtReal yl = y.lo_real(), yh = y.hi_real();
    if (yl.sign() > 0)
        return div_positive(x, yl, yh, f);
    if (yh.sign() < 0)
        return iv_neg(div_positive(x, negate(yh), negate(yl), f));

    // 0 in Y.
    if (x.contains_zero())
        return ExtInterval::entire(f);
    if (yl.sign() == 0 && yh.sign() == 0)
        return ExtInterval::empty(f);
    if (yl.sign() < 0 && yh.sign() > 0)
        return ExtInterval::entire(f); // hull of two half-lines

    // Y = [0, b] with b > 0, or [a, 0] with a < 0; X excludes 0.
    const ExtReal xl = x.lo_real(), xh = x.hi_real();
    const bool x_positive = xl.sign() > 0;
    if (yl.sign() == 0) {
        if (x_positive)
            return hull(div(xl, yh), div_by_zero_side(xl, 1), f);
        return hull(div_by_zero_side(xh, 1), div(xh, yh), f);
    }
    if (x_positive)
        return hull(div_by_zero_side(xl, -1), div(xl, yl), f);
    return hull(div(xh, yl), div_by_zero_side(xh, -1), f);
}

ExtInterval iv_apply(OpKind op, const ExtInterval& x, const ExtInterval& y)
{
    switch (op) {
    case OpKind::add:
        return iv_add(x, y);
    case OpKind::sub:
        return iv_sub(x, y);
    case OpKind::mul:
        return iv_mul(x, y);
    case OpKind::div:
        return iv_div(x, y);
    }
    throw std::invalid_argument("unknown interval operation");
}

ExtInterval iv_neg(const ExtInterval& x)
{
    if (x.is_empty())
        return x;
    return ExtInterval::from_bounds(-x.hi(), -x.lo());
}

bool iv_member(const Rational& q, const ExtInterval& x)
{
    if (x.is_empty())
        return false;
    const ExtReal v(q);
    return x.lo_real() <= v && v <= x.hi_real();
}

bool iv_subset(const ExtInterval& x, const ExtInterval& y)
{
    require_same_format(x, y);
    if (x.is_empty())
        return true;
    if (y.is_empty())
        return false;
    return compare(y.lo(), x.lo()) <= 0 && compare(x.hi(), y.hi()) <= 0;
}

} // namespace isem
