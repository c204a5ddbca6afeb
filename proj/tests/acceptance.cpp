// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "isem/catalog.hpp"
#include "isem/harness.hpp"
#include "isem/oracle.hpp"
#include "isem/roundflag.hpp"
#include "isem/text.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace isem;

namespace {

using Clock = std::chrono::steady_clock;

const FloatFormat toy = parse_format("p3e-2:3");
const FloatFormat toy4 = parse_format("p4e-3:3");
const FloatFormat b64 = FloatFormat::binary64();
constexpr OpKind all_ops[] = {OpKind::add, OpKind::sub, OpKind::mul, OpKind::div};
constexpr ZeroMode both_modes[] = {ZeroMode::finite_precision, ZeroMode::infinite_precision};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    enum class Status { pass, fail, skip } status;
    std::string detail;
};

Outcome verdict(bool ok, const std::string& detail) { return {ok ? Outcome::Status::pass : Outcome::Status::fail, detail}; }

Outcome identity_catalog_criterion()
{
    const auto start = Clock::now();
    std::uint64_t checked = 0, wrong = 0;
    std::ostringstream notes;
    for (const FloatFormat& f : {toy, b64}) {
        for (const IdentityRecord& r : identity_catalog()) {
            std::uint64_t bad = 0;
            for (const Fp& a : sample_operands(r.lhs, f))
                for (const Fp& b : sample_operands(r.rhs, f)) {
                    ++checked;
                    if (fp_interval_op(a, b, r.op, r.mode) != r.expected(a, b))
                        ++bad;
                }
            if (bad > 0) {
                wrong += bad;
                notes << "; " << r.name << " on " << to_string(f) << " differs on " << bad << " operand pairs";
                if (!r.dispute.empty())
                    notes << " (" << r.dispute << ")";
            }
        }
    }
    const double t = seconds_since(start);
    std::ostringstream d;
    d << identity_catalog().size() << " identities, " << checked << " operand pairs, " << wrong << " wrong, "
      << t << " s" << notes.str();
    return verdict(wrong == 0 && t < 1.0, d.str());
}

Outcome theorem_criterion(const std::vector<OpKind>& ops, double limit)
{
    const auto start = Clock::now();
    std::uint64_t cases = 0, mismatches = 0;
    std::string first;
    for (const FloatFormat& f : {toy, toy4})
        for (ZeroMode mode : both_modes) {
            const TheoremSummary s = run_theorem_suite(f, mode, ops);
            cases += s.cases;
            mismatches += s.mismatches;
            if (first.empty() && !s.counterexamples.empty())
                first = "; first: " + to_string(s.counterexamples.front());
        }
    const double t = seconds_since(start);
    std::ostringstream d;
    d << cases << " cases, " << mismatches << " mismatches, " << t << " s" << first;
    return verdict(mismatches == 0 && t < limit, d.str());
}

Outcome tightness_criterion()
{
    const auto start = Clock::now();
    std::uint64_t mismatches = 0;
    std::string first;
    for (const FloatFormat& f : {toy, toy4})
        for (ZeroMode mode : both_modes) {
            const auto m = oracle::exhaustive_compare(f, mode);
            mismatches += m.size();
            if (first.empty() && !m.empty())
                first = "; first: " + oracle::to_string(m.front());
        }
    const double t = seconds_since(start);
    std::ostringstream d;
    d << mismatches << " mismatches against the exact-set oracle, " << t << " s" << first;
    return verdict(mismatches == 0 && t < 300, d.str());
}

bool valid_nonempty(const ExtInterval& z)
{
    if (z.is_empty())
        return false;
    const Fp& lo = z.lo();
    const Fp& hi = z.hi();
    return !lo.is_nan() && !hi.is_nan() && !lo.is_pos_inf() && !hi.is_neg_inf() && compare(lo, hi) <= 0
        && !lower_bound(z).is_nan() && !upper_bound(z).is_nan();
}

Outcome totality_criterion()
{
    constexpr std::uint64_t pairs = 1'000'000;
    Binary64Sampler sampler(kDefaultSeed, false);
    std::uint64_t errors = 0, invalid = 0;
    for (std::uint64_t i = 0; i < pairs; ++i) {
        const Fp a = sampler.next(), b = sampler.next();
        for (OpKind op : all_ops) {
            try {
                if (!valid_nonempty(fp_interval_op(a, b, op, ZeroMode::finite_precision)))
                    ++invalid;
            } catch (const std::exception&) {
                ++errors;
            }
        }
    }
    std::ostringstream d;
    d << pairs << " binary64 pairs per op, " << errors << " errors, " << invalid << " NaN or invalid results";
    return verdict(errors == 0 && invalid == 0, d.str());
}

Outcome empty_criterion()
{
    const ExtInterval e = ExtInterval::empty(toy);
    std::vector<ExtInterval> all{e};
    std::vector<Fp> bounds;
    for (const Fp& x : enumerate(toy))
        if (!(x.is_zero() && x.negative()))
            bounds.push_back(x);
    for (std::size_t i = 0; i < bounds.size(); ++i)
        for (std::size_t j = i; j < bounds.size(); ++j)
            if (!bounds[i].is_pos_inf() && !bounds[j].is_neg_inf())
                all.push_back(ExtInterval::from_bounds(bounds[i], bounds[j]));
    std::uint64_t cases = 0, leaks = 0;
    for (const ExtInterval& x : all)
        for (OpKind op : all_ops) {
            cases += 2;
            leaks += !iv_apply(op, e, x).is_empty();
            leaks += !iv_apply(op, x, e).is_empty();
        }
    // NaN operands are the empty interval under infinite-precision zeros.
    const Fp nan = Fp::nan(toy);
    for (const Fp& x : enumerate(toy))
        for (OpKind op : all_ops) {
            cases += 2;
            leaks += !fp_interval_op(nan, x, op, ZeroMode::infinite_precision).is_empty();
            leaks += !fp_interval_op(x, nan, op, ZeroMode::infinite_precision).is_empty();
        }
    std::ostringstream d;
    d << cases << " cases over " << all.size() << " toy intervals and every toy float, " << leaks
      << " non-empty results";
    return verdict(leaks == 0, d.str());
}

Outcome flag_criterion()
{
    const bool table_ok = !round_up_table(false, false) && round_up_table(false, true) && !round_up_table(true, false)
        && round_up_table(true, true);
    std::uint64_t words = 0, mismatches = 0;
    const int kept_bits = toy.precision - 1;
    for (int extra = 1; extra <= 4; ++extra)
        for (unsigned kept = 0; kept < (1u << kept_bits); ++kept)
            for (unsigned tail = 0; tail < (1u << extra); ++tail)
                for (bool negative : {false, true}) {
                    std::vector<bool> bits{true};
                    for (int i = kept_bits - 1; i >= 0; --i)
                        bits.push_back(((kept >> i) & 1) != 0);
                    for (int i = extra - 1; i >= 0; --i)
                        bits.push_back(((tail >> i) & 1) != 0);
                    const PreRoundedWord w(negative, bits, static_cast<std::size_t>(kept_bits));
                    for (int e = toy.e_min; e <= toy.e_max; ++e) {
                        ++words;
                        const Rational exact = (negative ? -1 : 1) * w.magnitude() * pow2(e);
                        const FlaggedValue v = flagged_round_to_format(w, e, toy);
                        const auto [lo, hi] = recover_bounds(v.nearest, v.flag);
                        if (!(lo == round(exact, RoundingDirection::toward_neg_inf, toy)
                              && hi == round(exact, RoundingDirection::toward_pos_inf, toy)))
                            ++mismatches;
                    }
                }
    std::ostringstream d;
    d << words << " toy words, " << mismatches << " mismatches, table " << (table_ok ? "4/4 rows" : "wrong");
    return verdict(table_ok && mismatches == 0, d.str());
}

Outcome backend_criterion()
{
    if (!native_backend_available())
        return {Outcome::Status::skip, "host cannot switch binary64 rounding direction"};
    const BackendAgreement r = compare_backends(1'000'000, kDefaultSeed);
    std::ostringstream d;
    d << r.cases << " cases (10^6 pairs x 4 ops x 4 directions), " << r.disagreements << " disagreements";
    if (!r.examples.empty())
        d << "; first: " << to_string(r.examples.front());
    return verdict(r.disagreements == 0, d.str());
}

Outcome deviation_criterion()
{
    std::uint64_t rows = 0, claimed = 0, wrong = 0;
    for (const FloatFormat& f : {toy, b64})
        for (const DeviationRow& row : deviation_report(f, ZeroMode::finite_precision)) {
            ++rows;
            claimed += row.claim.has_value();
            wrong += !row.agrees_with_claim();
        }
    // a * +inf conforms exactly when a >= 1; IEEE-invalid patterns are newly defined.
    std::uint64_t rule_wrong = 0;
    for (const Fp& a : enumerate(toy)) {
        if (!a.is_finite() || a.is_zero() || a.negative())
            continue;
        const bool ge1 = to_rational(a) >= 1;
        const Conformance c = classify_vs_ieee(a, Fp::infinity(toy), OpKind::mul, ZeroMode::finite_precision);
        rule_wrong += (c == Conformance::conforms) != ge1;
    }
    for (const IdentityRecord& r : identity_catalog()) {
        if (r.group != IdentityGroup::formerly_invalid)
            continue;
        for (const Fp& a : sample_operands(r.lhs, toy))
            for (const Fp& b : sample_operands(r.rhs, toy))
                rule_wrong += classify_vs_ieee(a, b, r.op, r.mode) != Conformance::newly_defined;
    }
    std::ostringstream d;
    d << rows << " report rows, " << claimed << " with a stated outcome, " << wrong + rule_wrong << " disagreements";
    return verdict(wrong == 0 && rule_wrong == 0, d.str());
}

// Random toy or binary64 interval, sometimes empty or unbounded.
class IntervalSource {
public:
    IntervalSource(const FloatFormat& f, std::uint64_t seed) : f_(f), rng_(seed), b64_(seed, false)
    {
        if (f.enumerable())
            for (const Fp& x : enumerate(f))
                if (!x.is_nan())
                    values_.push_back(x);
    }

    Fp value()
    {
        if (values_.empty())
            return b64_.next();
        return values_[rng_() % values_.size()];
    }

    ExtInterval next()
    {
        if (rng_() % 50 == 0)
            return ExtInterval::empty(f_);
        Fp a = value(), b = value();
        if (compare(a, b) > 0)
            std::swap(a, b);
        if (a.is_pos_inf())
            a = max_finite(f_);
        if (b.is_neg_inf())
            b = -max_finite(f_);
        return ExtInterval::from_bounds(a, b);
    }

    // A superset of x.
    ExtInterval widen(const ExtInterval& x)
    {
        if (x.is_empty())
            return next();
        Fp lo = x.lo(), hi = x.hi();
        for (unsigned k = rng_() % 3; k > 0 && !lo.is_inf(); --k)
            lo = next_down(lo);
        for (unsigned k = rng_() % 3; k > 0 && !hi.is_inf(); --k)
            hi = next_up(hi);
        return ExtInterval::from_bounds(lo, hi);
    }

    std::mt19937_64& rng() { return rng_; }

private:
    FloatFormat f_;
    std::mt19937_64 rng_;
    Binary64Sampler b64_;
    std::vector<Fp> values_;
};

// Finite members of a non-empty interval.
std::vector<Rational> members(const ExtInterval& x, std::mt19937_64& rng)
{
    std::vector<Rational> out;
    const ExtReal lo = x.lo_real(), hi = x.hi_real();
    if (lo.is_finite())
        out.push_back(lo.value);
    if (hi.is_finite())
        out.push_back(hi.value);
    if (lo.is_finite() && hi.is_finite()) {
        const Rational t(static_cast<long>(rng() % 1000), 1000);
        out.push_back(lo.value + (hi.value - lo.value) * t);
    } else if (lo.is_finite()) {
        out.push_back(lo.value * 3 + 7);
        out.push_back(lo.value + 1);
    } else if (hi.is_finite()) {
        out.push_back(hi.value * 3 - 7);
        out.push_back(hi.value - 1);
    } else {
        out.push_back(Rational(static_cast<long>(rng() % 2001) - 1000, 7));
    }
    if (x.contains_zero())
        out.push_back(0);
    out.erase(std::remove_if(out.begin(), out.end(), [&](const Rational& q) { return !iv_member(q, x); }), out.end());
    return out;
}

Outcome property_criterion()
{
    constexpr int pairs = 10'000;
    std::uint64_t monotone_fail = 0, sound_fail = 0, points = 0;
    for (const FloatFormat& f : {toy, b64}) {
        IntervalSource src(f, kDefaultSeed);
        for (OpKind op : all_ops) {
            for (int i = 0; i < pairs; ++i) {
                const ExtInterval x = src.next(), y = src.next();
                const ExtInterval z = iv_apply(op, x, y);
                const ExtInterval x2 = src.widen(x), y2 = src.widen(y);
                monotone_fail += !iv_subset(z, iv_apply(op, x2, y2));
                monotone_fail += !iv_subset(z, iv_apply(op, x2, y));
                if (x.is_empty() || y.is_empty())
                    continue;
                for (const Rational& a : members(x, src.rng()))
                    for (const Rational& b : members(y, src.rng())) {
                        ++points;
                        switch (op) {
                        case OpKind::add:
                            sound_fail += !iv_member(a + b, z);
                            break;
                        case OpKind::sub:
                            sound_fail += !iv_member(a - b, z);
                            break;
                        case OpKind::mul:
                            sound_fail += !iv_member(a * b, z);
                            break;
                        case OpKind::div:
                            if (sgn(b) != 0)
                                sound_fail += !iv_member(a / b, z);
                            else if (sgn(a) == 0)
                                sound_fail += !z.is_entire();
                            break;
                        }
                    }
            }
        }
    }
    std::ostringstream d;
    d << pairs << " interval pairs per op on p3e-2:3 and b64, " << monotone_fail << " monotonicity failures, "
      << sound_fail << " soundness failures over " << points << " member pairs";
    return verdict(monotone_fail == 0 && sound_fail == 0, d.str());
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"identity catalog", identity_catalog_criterion},
        {"directed bounds equal IEEE for + - *", [] { return theorem_criterion({OpKind::add, OpKind::sub, OpKind::mul}, 60); }},
        {"directed bounds equal IEEE for /", [] { return theorem_criterion({OpKind::div}, 60); }},
        {"tightness against the oracle", tightness_criterion},
        {"totality on binary64", totality_criterion},
        {"empty propagation", empty_criterion},
        {"rounding-flag recovery", flag_criterion},
        {"native and softfloat backends agree", backend_criterion},
        {"deviation classification", deviation_criterion},
        {"monotonicity and soundness", property_criterion},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {Outcome::Status::fail, std::string("threw: ") + e.what()};
        }
        const char* status = o.status == Outcome::Status::pass ? "PASS" : o.status == Outcome::Status::fail ? "FAIL" : "SKIP";
        failed += o.status == Outcome::Status::fail;
        std::printf("%s criterion %zu (%s): %s [%.1f s]\n", status, i + 1, criteria[i].name, o.detail.c_str(),
                    seconds_since(start));
        std::fflush(stdout);
    }
    return failed;
}
