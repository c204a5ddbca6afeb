#include "isem/catalog.hpp"

#include <algorithm>

namespace isem {

const char* to_string(OperandClass c)
{
    switch (c) {
    case OperandClass::finite_nonzero:
        return "a";
    case OperandClass::positive:
        return "a>0";
    case OperandClass::positive_below_one:
        return "0<a<1";
    case OperandClass::positive_at_least_one:
        return "a>=1";
    case OperandClass::pos_zero:
        return "+0";
    case OperandClass::neg_zero:
        return "-0";
    case OperandClass::any_zero:
        return "+-0";
    case OperandClass::pos_inf:
        return "+inf";
    case OperandClass::neg_inf:
        return "-inf";
    }
    return "?";
}

bool matches(OperandClass c, const Fp& x)
{
    const bool pos = x.is_finite_nonzero() && !x.negative();
    const int vs_one = pos ? (to_rational(x) < 1 ? -1 : 1) : 0;
    switch (c) {
    case OperandClass::finite_nonzero:
        return x.is_finite_nonzero();
    case OperandClass::positive:
        return pos;
    case OperandClass::positive_below_one:
        return pos && vs_one < 0;
    case OperandClass::positive_at_least_one:
        return pos && vs_one > 0;
    case OperandClass::pos_zero:
        return x.is_zero() && !x.negative();
    case OperandClass::neg_zero:
        return x.is_zero() && x.negative();
    case OperandClass::any_zero:
        return x.is_zero();
    case OperandClass::pos_inf:
        return x.is_pos_inf();
    case OperandClass::neg_inf:
        return x.is_neg_inf();
    }
    return false;
}

const char* to_string(IdentityGroup g)
{
    switch (g) {
    case IdentityGroup::ieee_defined:
        return "ieee-defined";
    case IdentityGroup::formerly_invalid:
        return "formerly-invalid";
    case IdentityGroup::exact_zero:
        return "exact-zero";
    }
    return "?";
}

std::string IdentityRecord::pattern() const
{
    return std::string(to_string(lhs)) + ' ' + op_symbol(op) + ' ' + to_string(rhs);
}

namespace {

using Expected = std::function<ExtInterval(const Fp&, const Fp&)>;
using Claim = std::function<std::optional<Conformance>(const Fp&, const Fp&)>;

Fp big_m(const Fp& x) { return max_finite(x.format()); }
Fp small_m(const Fp& x) { return min_pos(x.format()); }
Rational big_m_real(const Fp& x) { return to_rational(big_m(x)); }
Rational small_m_real(const Fp& x) { return to_rational(small_m(x)); }
Fp rd(const Rational& q, const Fp& like) { return round(q, RoundingDirection::toward_neg_inf, like.format()); }
Fp ru(const Rational& q, const Fp& like) { return round(q, RoundingDirection::toward_pos_inf, like.format()); }
Fp pinf(const Fp& x) { return Fp::infinity(x.format()); }
Fp ninf(const Fp& x) { return Fp::infinity(x.format(), true); }
Fp zero(const Fp& x) { return Fp::zero(x.format()); }
ExtInterval iv(const Fp& lo, const Fp& hi) { return ExtInterval::from_bounds(lo, hi); }
Fp min_of(const Fp& a, const Fp& b) { return compare(a, b) <= 0 ? a : b; }

Claim always(Conformance c)
{
    return [c](const Fp&, const Fp&) { return std::optional<Conformance>(c); };
}

Claim no_claim()
{
    return [](const Fp&, const Fp&) { return std::optional<Conformance>(); };
}

IdentityRecord make(std::string name, IdentityGroup group, OperandClass lhs, OpKind op, OperandClass rhs,
                    std::string text, Expected expected, Claim claim)
{
    const ZeroMode mode = group == IdentityGroup::exact_zero ? ZeroMode::infinite_precision
                                                             : ZeroMode::finite_precision;
    return IdentityRecord{std::move(name), group, lhs, op, rhs, mode, std::move(text), std::move(expected),
                          std::move(claim)};
}

std::vector<IdentityRecord> build_catalog()
{
    using G = IdentityGroup;
    using C = OperandClass;
    std::vector<IdentityRecord> out;

    // IEEE 754 defines a result for these.
    out.push_back(make("inf-mul-inf", G::ieee_defined, C::pos_inf, OpKind::mul, C::pos_inf, "[M, +inf)",
                       [](const Fp& a, const Fp&) { return iv(big_m(a), pinf(a)); },
                       always(Conformance::conforms)));
    out.push_back(make("inf-mul-neginf", G::ieee_defined, C::pos_inf, OpKind::mul, C::neg_inf, "(-inf, -M]",
                       [](const Fp& a, const Fp&) { return iv(ninf(a), -big_m(a)); },
                       always(Conformance::conforms)));
    out.push_back(make("a-mul-inf-ge1", G::ieee_defined, C::positive_at_least_one, OpKind::mul, C::pos_inf,
                       "[M, +inf)", [](const Fp& a, const Fp&) { return iv(big_m(a), pinf(a)); },
                       always(Conformance::conforms)));
    out.push_back(make("a-mul-inf-lt1", G::ieee_defined, C::positive_below_one, OpKind::mul, C::pos_inf,
                       "[rd(a*M), +inf)",
                       [](const Fp& a, const Fp&) { return iv(rd(to_rational(a) * big_m_real(a), a), pinf(a)); },
                       always(Conformance::deviates)));
    out.push_back(make("inf-add-inf", G::ieee_defined, C::pos_inf, OpKind::add, C::pos_inf, "[M, +inf)",
                       [](const Fp& a, const Fp&) { return iv(big_m(a), pinf(a)); },
                       always(Conformance::conforms)));
    out.push_back(make(
        "a-add-inf", G::ieee_defined, C::finite_nonzero, OpKind::add, C::pos_inf, "[min(rd(a+M), M), +inf)",
        [](const Fp& a, const Fp&) {
            return iv(min_of(rd(to_rational(a) + big_m_real(a), a), big_m(a)), pinf(a));
        },
        [](const Fp& a, const Fp&) {
            return std::optional<Conformance>(a.negative() ? Conformance::deviates : Conformance::conforms);
        }));
    out.push_back(make("pzero-add-pzero", G::ieee_defined, C::pos_zero, OpKind::add, C::pos_zero, "[0, ru(2m)]",
                       [](const Fp& a, const Fp&) { return iv(zero(a), ru(2 * small_m_real(a), a)); },
                       no_claim()));
    out.push_back(make("pzero-add-nzero", G::ieee_defined, C::pos_zero, OpKind::add, C::neg_zero, "[-m, m]",
                       [](const Fp& a, const Fp&) { return iv(-small_m(a), small_m(a)); }, no_claim()));
    out.push_back(make(
        "a-div-inf", G::ieee_defined, C::positive, OpKind::div, C::pos_inf, "[0, ru(a/M)]",
        [](const Fp& a, const Fp&) { return iv(zero(a), ru(to_rational(a) / big_m_real(a), a)); },
        [](const Fp& a, const Fp&) {
            // Large a: the upper bound grows past m toward 1.
            if (to_rational(a) >= 1 && to_rational(a) / big_m_real(a) > small_m_real(a))
                return std::optional<Conformance>(Conformance::deviates);
            return std::optional<Conformance>();
        }));
    out.push_back(make(
        "inf-div-a", G::ieee_defined, C::pos_inf, OpKind::div, C::positive, "[min(M, rd(M/a)), +inf)",
        [](const Fp&, const Fp& a) { return iv(min_of(big_m(a), rd(big_m_real(a) / to_rational(a), a)), pinf(a)); },
        [](const Fp&, const Fp& a) {
            return std::optional<Conformance>(to_rational(a) > 1 ? Conformance::deviates : Conformance::conforms);
        }));
    out.push_back(make("inf-div-pzero", G::ieee_defined, C::pos_inf, OpKind::div, C::pos_zero, "[M, +inf)",
                       [](const Fp& a, const Fp&) { return iv(big_m(a), pinf(a)); },
                       always(Conformance::conforms)));
    out.push_back(make(
        "a-div-pzero", G::ieee_defined, C::positive, OpKind::div, C::pos_zero, "[rd(a/m), +inf)",
        [](const Fp& a, const Fp&) { return iv(rd(to_rational(a) / small_m_real(a), a), pinf(a)); },
        [](const Fp& a, const Fp&) {
            // Small a: the lower bound drops below M toward 1.
            if (to_rational(a) / small_m_real(a) < big_m_real(a))
                return std::optional<Conformance>(Conformance::deviates);
            return std::optional<Conformance>();
        }));

    // IEEE 754 gives NaN for these.
    const auto newly = always(Conformance::newly_defined);
    out.push_back(make("zero-mul-inf", G::formerly_invalid, C::pos_zero, OpKind::mul, C::pos_inf, "[0, +inf)",
                       [](const Fp& a, const Fp&) { return iv(zero(a), pinf(a)); }, newly));
    out.push_back(make("inf-div-inf", G::formerly_invalid, C::pos_inf, OpKind::div, C::pos_inf, "[0, +inf)",
                       [](const Fp& a, const Fp&) { return iv(zero(a), pinf(a)); }, newly));
    out.push_back(make("inf-div-neginf", G::formerly_invalid, C::pos_inf, OpKind::div, C::neg_inf, "(-inf, 0]",
                       [](const Fp& a, const Fp&) { return iv(ninf(a), zero(a)); }, newly));
    out.push_back(make("neginf-div-neginf", G::formerly_invalid, C::neg_inf, OpKind::div, C::neg_inf,
                       "[0, +inf)", [](const Fp& a, const Fp&) { return iv(zero(a), pinf(a)); }, newly));
    out.push_back(make("pzero-div-pzero", G::formerly_invalid, C::pos_zero, OpKind::div, C::pos_zero,
                       "[0, +inf)", [](const Fp& a, const Fp&) { return iv(zero(a), pinf(a)); }, newly));
    out.back().dispute = "x = y = 0 lies in [0, m] x [0, m] and satisfies y*z = x for every z, so the "
                         "relational quotient is (-inf, +inf)";
    out.push_back(make("inf-sub-inf", G::formerly_invalid, C::pos_inf, OpKind::sub, C::pos_inf, "(-inf, +inf)",
                       [](const Fp& a, const Fp&) { return ExtInterval::entire(a.format()); }, newly));

    // Infinite-precision zeros.
    const auto point_zero = [](const Fp& a, const Fp&) { return ExtInterval::point(zero(a)); };
    const auto nothing = [](const Fp& a, const Fp&) { return ExtInterval::empty(a.format()); };
    out.push_back(make("pzero-add-pzero-exact", G::exact_zero, C::pos_zero, OpKind::add, C::pos_zero, "[0, 0]",
                       point_zero, no_claim()));
    out.push_back(make("pzero-add-nzero-exact", G::exact_zero, C::pos_zero, OpKind::add, C::neg_zero, "[0, 0]",
                       point_zero, no_claim()));
    out.push_back(make("inf-div-pzero-exact", G::exact_zero, C::pos_inf, OpKind::div, C::pos_zero, "empty",
                       nothing, no_claim()));
    out.push_back(make("a-div-pzero-exact", G::exact_zero, C::positive, OpKind::div, C::pos_zero, "empty",
                       nothing, no_claim()));
    out.push_back(make("zero-mul-inf-exact", G::exact_zero, C::any_zero, OpKind::mul, C::pos_inf, "[0, 0]",
                       point_zero, no_claim()));
    out.push_back(make("zero-div-zero-exact", G::exact_zero, C::pos_zero, OpKind::div, C::any_zero,
                       "(-inf, +inf)", [](const Fp& a, const Fp&) { return ExtInterval::entire(a.format()); },
                       no_claim()));
    return out;
}

} // namespace

const std::vector<IdentityRecord>& identity_catalog()
{
    static const std::vector<IdentityRecord> catalog = build_catalog();
    return catalog;
}

std::vector<Fp> sample_operands(OperandClass c, const FloatFormat& f)
{
    std::vector<Fp> candidates;
    if (f.enumerable()) {
        candidates = enumerate(f);
    } else {
        const Fp m = min_pos(f);
        const Fp big = max_finite(f);
        const auto near = [&](const Rational& q) { return round(q, RoundingDirection::nearest, f); };
        const Rational one(1);
        std::vector<Fp> positives{m,
                                  next_up(m),
                                  near(pow2(f.e_min)),
                                  near(Rational(1, 3)),
                                  near(Rational(1, 2)),
                                  next_down(near(one)),
                                  near(one),
                                  next_up(near(one)),
                                  near(Rational(3, 2)),
                                  near(Rational(2)),
                                  near(Rational(10)),
                                  near(pow2(f.e_max / 2)),
                                  next_down(big),
                                  big};
        for (const Fp& p : positives) {
            candidates.push_back(p);
            candidates.push_back(-p);
        }
        for (bool neg : {false, true}) {
            candidates.push_back(Fp::zero(f, neg));
            candidates.push_back(Fp::infinity(f, neg));
        }
    }
    std::vector<Fp> out;
    for (const Fp& x : candidates) {
        if (matches(c, x) && std::find(out.begin(), out.end(), x) == out.end())
            out.push_back(x);
    }
    return out;
}

} // namespace isem
