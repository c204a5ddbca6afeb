#include "isem/harness.hpp"

#include "isem/catalog.hpp"
#include "isem/text.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace isem {

namespace detail {
// Defined in native_fenv.cpp, which is built with -frounding-math.
double native_apply(double a, double b, OpKind op, RoundingDirection dir);
bool native_rounding_works();
} // namespace detail

namespace {

Fp soft_add(const Fp& a, const Fp& b, RoundingDirection dir)
{
    const FloatFormat& f = a.format();
    const bool down = dir == RoundingDirection::toward_neg_inf;
    if (a.is_inf() && b.is_inf())
        return a.negative() == b.negative() ? a : Fp::nan(f);
    if (a.is_inf())
        return a;
    if (b.is_inf())
        return b;
    if (a.is_zero() && b.is_zero())
        return a.negative() == b.negative() ? a : Fp::zero(f, down);
    const Rational exact = to_rational(a) + to_rational(b);
    if (sgn(exact) == 0)
        return Fp::zero(f, down);
    return round(exact, dir, f);
}

Fp soft_mul(const Fp& a, const Fp& b, RoundingDirection dir)
{
    const FloatFormat& f = a.format();
    const bool neg = a.negative() != b.negative();
    if ((a.is_inf() && b.is_zero()) || (a.is_zero() && b.is_inf()))
        return Fp::nan(f);
    if (a.is_inf() || b.is_inf())
        return Fp::infinity(f, neg);
    if (a.is_zero() || b.is_zero())
        return Fp::zero(f, neg);
    return round(to_rational(a) * to_rational(b), dir, f);
}

Fp soft_div(const Fp& a, const Fp& b, RoundingDirection dir)
{
    const FloatFormat& f = a.format();
    const bool neg = a.negative() != b.negative();
    if ((a.is_inf() && b.is_inf()) || (a.is_zero() && b.is_zero()))
        return Fp::nan(f);
    if (a.is_inf())
        return Fp::infinity(f, neg);
    if (b.is_inf())
        return Fp::zero(f, neg);
    if (b.is_zero())
        return Fp::infinity(f, neg);
    if (a.is_zero())
        return Fp::zero(f, neg);
    return round(to_rational(a) / to_rational(b), dir, f);
}

Fp softfloat(const Fp& a, const Fp& b, OpKind op, RoundingDirection dir)
{
    if (a.is_nan() || b.is_nan())
        return Fp::nan(a.format());
    switch (op) {
    case OpKind::add:
        return soft_add(a, b, dir);
    case OpKind::sub:
        return soft_add(a, -b, dir);
    case OpKind::mul:
        return soft_mul(a, b, dir);
    case OpKind::div:
        return soft_div(a, b, dir);
    }
    throw std::invalid_argument("unknown operation");
}

} // namespace

Fp ieee_reference(const Fp& a, const Fp& b, OpKind op, RoundingDirection dir, IeeeBackend backend)
{
    if (a.format() != b.format())
        throw std::invalid_argument("ieee_reference operands from different formats");
    if (backend == IeeeBackend::softfloat)
        return softfloat(a, b, op, dir);
    if (a.format() != FloatFormat::binary64())
        throw std::invalid_argument("native backend only supports binary64");
    return from_double(detail::native_apply(to_double(a), to_double(b), op, dir));
}

bool native_backend_available()
{
    static const bool ok = detail::native_rounding_works();
    return ok;
}

const char* to_string(RoundingDirection dir)
{
    switch (dir) {
    case RoundingDirection::toward_neg_inf:
        return "down";
    case RoundingDirection::toward_pos_inf:
        return "up";
    case RoundingDirection::toward_zero:
        return "zero";
    case RoundingDirection::nearest:
        return "nearest";
    }
    return "?";
}

std::string to_string(const DiffCase& c)
{
    std::ostringstream os;
    os << to_string(c.a.format()) << ' ' << to_string(c.op) << ' ' << to_string(c.a) << ' ' << to_string(c.b)
       << ' ' << to_string(c.direction) << " ieee=" << to_string(c.ieee_result)
       << " interval=" << to_string(c.interval_bound);
    return os.str();
}

Binary64Sampler::Binary64Sampler(std::uint64_t seed, bool finite_only, bool allow_nan)
    : rng_(seed), finite_only_(finite_only), allow_nan_(allow_nan)
{
    const FloatFormat f = FloatFormat::binary64();
    const Fp min_normal = round(pow2(f.e_min), RoundingDirection::nearest, f);
    std::vector<Fp> positives{min_pos(f), max_finite(f), from_double(1.0), min_normal, next_down(min_normal),
                              from_double(0.5), from_double(2.0), from_double(0x1p52), from_double(0x1p53),
                              from_double(0x1p1023)};
    for (const Fp& p : positives) {
        fixed_.push_back(p);
        fixed_.push_back(-p);
    }
    fixed_.push_back(Fp::zero(f));
    fixed_.push_back(Fp::zero(f, true));
    if (!finite_only_) {
        fixed_.push_back(Fp::infinity(f));
        fixed_.push_back(Fp::infinity(f, true));
    }
    if (allow_nan_)
        fixed_.push_back(Fp::nan(f));
}

Fp Binary64Sampler::next()
{
    if (fixed_pos_ < fixed_.size())
        return fixed_[fixed_pos_++];
    for (;;) {
        const Fp x = from_double(std::bit_cast<double>(rng_()));
        if (x.is_nan() && !allow_nan_)
            continue;
        if (!x.is_finite() && finite_only_)
            continue;
        return x;
    }
}

namespace {

constexpr std::size_t kMaxCounterexamples = 8;

bool theorem_operand(const Fp& x, ZeroMode mode)
{
    if (!x.is_finite())
        return false;
    return mode == ZeroMode::infinite_precision || !x.is_zero();
}

void check_pair(const Fp& a, const Fp& b, OpKind op, ZeroMode mode, TheoremSummary& out)
{
    if (op == OpKind::div && b.is_zero())
        return;
    const ExtInterval r = fp_interval_op(a, b, op, mode);
    for (RoundingDirection dir : {RoundingDirection::toward_neg_inf, RoundingDirection::toward_pos_inf}) {
        const Fp bound = dir == RoundingDirection::toward_pos_inf ? upper_bound(r) : lower_bound(r);
        const Fp ieee = ieee_reference(a, b, op, dir);
        ++out.cases;
        if (same_value(bound, ieee))
            continue;
        ++out.mismatches;
        if (out.counterexamples.size() < kMaxCounterexamples) {
            const auto verdict = ieee.is_nan() ? DiffCase::Verdict::ieee_nan : DiffCase::Verdict::mismatch;
            out.counterexamples.push_back(DiffCase{a, b, op, dir, ieee, bound, verdict});
        }
    }
}

} // namespace

TheoremSummary run_theorem_suite(const FloatFormat& f, ZeroMode mode, const std::vector<OpKind>& ops,
                                 const SampleSpec& spec)
{
    TheoremSummary out;
    if (f.enumerable()) {
        std::vector<Fp> operands;
        for (const Fp& x : enumerate(f)) {
            if (theorem_operand(x, mode))
                operands.push_back(x);
        }
        for (OpKind op : ops) {
            for (const Fp& a : operands) {
                for (const Fp& b : operands)
                    check_pair(a, b, op, mode, out);
            }
        }
        return out;
    }
    if (f != FloatFormat::binary64())
        throw EnumerationRefused("randomized theorem suite only samples binary64");
    for (OpKind op : ops) {
        Binary64Sampler sa(spec.seed), sb(spec.seed ^ 0x9e3779b97f4a7c15ULL);
        for (std::uint64_t i = 0; i < spec.samples;) {
            const Fp a = sa.next();
            const Fp b = sb.next();
            if (!theorem_operand(a, mode) || !theorem_operand(b, mode))
                continue;
            check_pair(a, b, op, mode, out);
            ++i;
        }
    }
    return out;
}

namespace {

bool parameterised(OperandClass c)
{
    switch (c) {
    case OperandClass::finite_nonzero:
    case OperandClass::positive:
    case OperandClass::positive_below_one:
    case OperandClass::positive_at_least_one:
        return true;
    default:
        return false;
    }
}

// A spread of samples plus landmark values (m, 0.5, 1, 2, M, ...).
std::vector<Fp> report_samples(OperandClass c, const FloatFormat& f)
{
    std::vector<Fp> all = sample_operands(c, f);
    if (!parameterised(c) || all.size() <= 6)
        return all;
    std::vector<Fp> picked;
    auto add = [&](const Fp& x) {
        if (matches(c, x) && std::find(picked.begin(), picked.end(), x) == picked.end())
            picked.push_back(x);
    };
    const std::size_t n = all.size();
    for (std::size_t i : {std::size_t{0}, n / 4, n / 2, 3 * n / 4, n - 1})
        add(all[i]);
    for (const Rational& q : {Rational(1, 2), Rational(1), Rational(2), Rational(-2), Rational(-1, 2)}) {
        const Fp x = round(q, RoundingDirection::nearest, f);
        if (x.is_finite_nonzero() && to_rational(x) == q)
            add(x);
    }
    std::sort(picked.begin(), picked.end(), [](const Fp& a, const Fp& b) { return compare(a, b) < 0; });
    return picked;
}

} // namespace

std::vector<DeviationRow> deviation_report(const FloatFormat& f, ZeroMode mode)
{
    std::vector<DeviationRow> rows;
    for (const IdentityRecord& rec : identity_catalog()) {
        if (rec.mode != mode)
            continue;
        for (const Fp& lhs : report_samples(rec.lhs, f)) {
            for (const Fp& rhs : report_samples(rec.rhs, f)) {
                rows.push_back(DeviationRow{
                    rec.name,
                    rec.pattern(),
                    lhs,
                    rhs,
                    rec.op,
                    mode,
                    ieee_reference(lhs, rhs, rec.op, RoundingDirection::toward_neg_inf),
                    ieee_reference(lhs, rhs, rec.op, RoundingDirection::toward_pos_inf),
                    fp_interval_op(lhs, rhs, rec.op, mode),
                    classify_vs_ieee(lhs, rhs, rec.op, mode),
                    rec.claim(lhs, rhs),
                });
            }
        }
    }
    return rows;
}

BackendAgreement compare_backends(std::uint64_t pairs, std::uint64_t seed, bool finite_only)
{
    if (!native_backend_available())
        throw std::runtime_error("native directed rounding is not available on this host");
    BackendAgreement out;
    constexpr RoundingDirection dirs[] = {RoundingDirection::toward_neg_inf, RoundingDirection::toward_pos_inf,
                                          RoundingDirection::toward_zero, RoundingDirection::nearest};
    for (OpKind op : {OpKind::add, OpKind::sub, OpKind::mul, OpKind::div}) {
        Binary64Sampler sa(seed, finite_only), sb(seed ^ 0x9e3779b97f4a7c15ULL, finite_only);
        for (std::uint64_t i = 0; i < pairs; ++i) {
            const Fp a = sa.next();
            const Fp b = sb.next();
            for (RoundingDirection dir : dirs) {
                const Fp soft = ieee_reference(a, b, op, dir, IeeeBackend::softfloat);
                const Fp native = ieee_reference(a, b, op, dir, IeeeBackend::native);
                ++out.cases;
                if (soft == native)
                    continue;
                ++out.disagreements;
                if (out.examples.size() < kMaxCounterexamples)
                    out.examples.push_back(DiffCase{a, b, op, dir, soft, native, DiffCase::Verdict::mismatch});
            }
        }
    }
    return out;
}

} // namespace isem
