#include "isem/semantics.hpp"

#include "isem/harness.hpp"

namespace isem {

const char* to_string(ZeroMode mode)
{
    return mode == ZeroMode::finite_precision ? "finite" : "infinite";
}

const char* to_string(Conformance c)
{
    switch (c) {
    case Conformance::conforms:
        return "conforms";
    case Conformance::deviates:
        return "deviates";
    case Conformance::newly_defined:
        return "newly-defined";
    }
    return "?";
}

ExtInterval interpret(const Fp& x, ZeroMode mode)
{
    const FloatFormat& f = x.format();
    switch (x.kind()) {
    case Fp::Kind::finite:
        return ExtInterval::point(x);
    case Fp::Kind::infinity:
        return x.negative() ? ExtInterval::from_bounds(Fp::infinity(f, true), -max_finite(f))
                            : ExtInterval::from_bounds(max_finite(f), Fp::infinity(f));
    case Fp::Kind::zero:
        if (mode == ZeroMode::infinite_precision)
            return ExtInterval::point(Fp::zero(f));
        return x.negative() ? ExtInterval::from_bounds(-min_pos(f), Fp::zero(f))
                            : ExtInterval::from_bounds(Fp::zero(f), min_pos(f));
    case Fp::Kind::nan:
        break;
    }
    if (mode == ZeroMode::finite_precision)
        throw std::domain_error("NaN has no interval meaning under finite-precision zeros");
    return ExtInterval::empty(f);
}

std::optional<Fp> represent(const ExtInterval& x, ZeroMode mode)
{
    const FloatFormat& f = x.format();
    if (x.is_empty()) {
        if (mode == ZeroMode::infinite_precision)
            return Fp::nan(f);
        return std::nullopt;
    }
    const Fp& lo = x.lo();
    const Fp& hi = x.hi();
    if (x.is_point()) {
        if (!lo.is_zero())
            return lo;
        if (mode == ZeroMode::infinite_precision)
            return Fp::zero(f);
        return std::nullopt;
    }
    if (hi.is_pos_inf() && lo == max_finite(f))
        return Fp::infinity(f);
    if (lo.is_neg_inf() && hi == -max_finite(f))
        return Fp::infinity(f, true);
    if (mode == ZeroMode::finite_precision) {
        const Fp m = min_pos(f);
        if (lo.is_zero() && hi == m)
            return Fp::zero(f);
        if (hi.is_zero() && lo == -m)
            return Fp::zero(f, true);
    }
    return std::nullopt;
}

ExtInterval fp_interval_op(const Fp& a, const Fp& b, FpOpKind op, ZeroMode mode)
{
    return iv_apply(op, interpret(a, mode), interpret(b, mode));
}

namespace {

bool nonpositive_nonpoint(const ExtInterval& x)
{
    return !x.is_point() && compare(x.hi(), Fp::zero(x.format())) <= 0;
}

} // namespace

Fp lower_bound(const ExtInterval& x)
{
    if (x.is_empty())
        return Fp::nan(x.format());
    if (x.lo().is_zero() && nonpositive_nonpoint(x))
        return Fp::zero(x.format(), true);
    return x.lo();
}

Fp upper_bound(const ExtInterval& x)
{
    if (x.is_empty())
        return Fp::nan(x.format());
    if (x.hi().is_zero() && nonpositive_nonpoint(x))
        return Fp::zero(x.format(), true);
    return x.hi();
}

Fp fp_scalar_op(const Fp& a, const Fp& b, FpOpKind op, RoundingDirection dir, ZeroMode mode)
{
    if (dir != RoundingDirection::toward_pos_inf && dir != RoundingDirection::toward_neg_inf)
        throw std::invalid_argument("fp_scalar_op needs a directed rounding");
    const ExtInterval r = fp_interval_op(a, b, op, mode);
    return dir == RoundingDirection::toward_pos_inf ? upper_bound(r) : lower_bound(r);
}

Conformance classify_vs_ieee(const Fp& a, const Fp& b, FpOpKind op, ZeroMode mode)
{
    const Fp ieee_up = ieee_reference(a, b, op, RoundingDirection::toward_pos_inf);
    const Fp ieee_down = ieee_reference(a, b, op, RoundingDirection::toward_neg_inf);
    if (mode == ZeroMode::finite_precision && (a.is_nan() || b.is_nan()))
        throw std::domain_error("NaN operand under finite-precision zeros");
    const ExtInterval r = fp_interval_op(a, b, op, mode);

    if (ieee_up.is_nan() || ieee_down.is_nan())
        return r.is_empty() ? Conformance::conforms : Conformance::newly_defined;

    const std::optional<Fp> whole = represent(r, mode);
    auto agrees = [&](const Fp& ieee, const Fp& bound) {
        if (whole && same_value(*whole, ieee))
            return true;
        return same_value(bound, ieee);
    };
    if (agrees(ieee_up, upper_bound(r)) && agrees(ieee_down, lower_bound(r)))
        return Conformance::conforms;
    return Conformance::deviates;
}

} // namespace isem
