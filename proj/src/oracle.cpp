#include "isem/oracle.hpp"

#include "isem/text.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <exception>
#include <thread>

namespace isem::oracle {

bool operator==(const Endpoint& a, const Endpoint& b)
{
    return a.kind == b.kind && (a.kind != Endpoint::Kind::rational || a.value == b.value);
}

bool less(const Endpoint& a, const Endpoint& b)
{
    if (a.kind != b.kind)
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    return a.kind == Endpoint::Kind::rational && a.value < b.value;
}

namespace {

bool less_equal(const Endpoint& a, const Endpoint& b) { return !less(b, a); }

Endpoint neg(const Endpoint& e)
{
    switch (e.kind) {
    case Endpoint::Kind::minus_infinity:
        return Endpoint::plus_inf();
    case Endpoint::Kind::plus_infinity:
        return Endpoint::minus_inf();
    case Endpoint::Kind::rational:
        break;
    }
    return Endpoint::at(-e.value);
}

Component neg(const Component& c) { return {neg(c.hi), neg(c.lo)}; }

bool is_zero(const Endpoint& e) { return e.kind == Endpoint::Kind::rational && sgn(e.value) == 0; }

int sign_of(const Endpoint& e)
{
    if (e.kind == Endpoint::Kind::minus_infinity)
        return -1;
    if (e.kind == Endpoint::Kind::plus_infinity)
        return 1;
    return sgn(e.value);
}

// Sum of two endpoints on the same side (never opposite infinities).
Endpoint plus(const Endpoint& a, const Endpoint& b)
{
    if (a.kind != Endpoint::Kind::rational)
        return a;
    if (b.kind != Endpoint::Kind::rational)
        return b;
    return Endpoint::at(a.value + b.value);
}

// Parts of a component by sign, each written as a component of
// nonnegative reals; the flag says whether it was mirrored.
struct SignedPiece {
    Component magnitude;
    bool mirrored;
};

std::vector<SignedPiece> sign_pieces(const Component& c)
{
    std::vector<SignedPiece> out;
    const Endpoint zero = Endpoint::at(Rational(0));
    if (sign_of(c.hi) >= 0)
        out.push_back({{sign_of(c.lo) >= 0 ? c.lo : zero, c.hi}, false});
    if (sign_of(c.lo) <= 0)
        out.push_back({neg(Component{c.lo, sign_of(c.hi) <= 0 ? c.hi : zero}), true});
    return out;
}

// Image of x*y over x in p, y in q, both within [0, +inf).
Component product_of_magnitudes(const Component& p, const Component& q)
{
    const bool p_zero = is_zero(p.hi);
    const bool q_zero = is_zero(q.hi);
    if (p_zero || q_zero)
        return {Endpoint::at(Rational(0)), Endpoint::at(Rational(0))};
    Endpoint lo = Endpoint::at(p.lo.value * q.lo.value);
    Endpoint hi = (p.hi.kind == Endpoint::Kind::plus_infinity || q.hi.kind == Endpoint::Kind::plus_infinity)
        ? Endpoint::plus_inf()
        : Endpoint::at(p.hi.value * q.hi.value);
    return {lo, hi};
}

// Closure of {x / y : x in p, y in d} for p within [0, +inf) and d the
// positive reals of a divisor, given by its infimum (possibly an excluded 0)
// and supremum.
Component quotient_of_magnitudes(const Component& p, const Endpoint& d_inf, const Endpoint& d_sup)
{
    const Endpoint zero = Endpoint::at(Rational(0));
    if (is_zero(p.hi))
        return {zero, zero};
    const Endpoint lo = d_sup.kind == Endpoint::Kind::plus_infinity ? zero : Endpoint::at(p.lo.value / d_sup.value);
    Endpoint hi;
    if (p.hi.kind == Endpoint::Kind::plus_infinity || is_zero(d_inf))
        hi = Endpoint::plus_inf();
    else
        hi = Endpoint::at(p.hi.value / d_inf.value);
    return {lo, hi};
}

} // namespace

RealSet RealSet::interval(const Endpoint& lo, const Endpoint& hi)
{
    return from_components({{lo, hi}});
}

RealSet RealSet::from_components(std::vector<Component> parts)
{
    for (const Component& c : parts) {
        if (less(c.hi, c.lo) || c.lo.kind == Endpoint::Kind::plus_infinity
            || c.hi.kind == Endpoint::Kind::minus_infinity)
            throw std::invalid_argument("malformed real-set component");
    }
    std::sort(parts.begin(), parts.end(), [](const Component& a, const Component& b) { return less(a.lo, b.lo); });
    RealSet out;
    for (const Component& c : parts) {
        if (!out.parts_.empty() && less_equal(c.lo, out.parts_.back().hi)) {
            if (less(out.parts_.back().hi, c.hi))
                out.parts_.back().hi = c.hi;
        } else {
            out.parts_.push_back(c);
        }
    }
    return out;
}

bool RealSet::contains(const Rational& q) const
{
    const Endpoint e = Endpoint::at(q);
    return std::any_of(parts_.begin(), parts_.end(),
                       [&](const Component& c) { return less_equal(c.lo, e) && less_equal(e, c.hi); });
}

bool operator==(const RealSet& a, const RealSet& b)
{
    return std::equal(a.parts_.begin(), a.parts_.end(), b.parts_.begin(), b.parts_.end(),
                      [](const Component& x, const Component& y) { return x.lo == y.lo && x.hi == y.hi; });
}

std::string to_string(const RealSet& s)
{
    if (s.is_empty())
        return "empty";
    std::string out;
    for (const Component& c : s.components()) {
        if (!out.empty())
            out += " u ";
        out += c.lo.kind == Endpoint::Kind::minus_infinity ? "(-inf" : "[" + c.lo.value.get_str();
        out += ", ";
        out += c.hi.kind == Endpoint::Kind::plus_infinity ? "+inf)" : c.hi.value.get_str() + "]";
    }
    return out;
}

RealSet exact_relational_set(const RealSet& x, const RealSet& y, OpKind op)
{
    if (x.is_empty() || y.is_empty())
        return RealSet::empty();
    if (x.components().size() != 1 || y.components().size() != 1)
        throw std::invalid_argument("exact_relational_set takes single intervals");
    const Component& cx = x.components().front();
    const Component& cy = y.components().front();

    switch (op) {
    case OpKind::add: // z = x + y
        return RealSet::interval(plus(cx.lo, cy.lo), plus(cx.hi, cy.hi));
    case OpKind::sub: // y + z = x, so z = x - y
        return RealSet::interval(plus(cx.lo, neg(cy.hi)), plus(cx.hi, neg(cy.lo)));
    case OpKind::mul: {
        std::vector<Component> parts;
        for (const SignedPiece& px : sign_pieces(cx)) {
            for (const SignedPiece& py : sign_pieces(cy)) {
                const Component image = product_of_magnitudes(px.magnitude, py.magnitude);
                parts.push_back(px.mirrored != py.mirrored ? neg(image) : image);
            }
        }
        return RealSet::from_components(std::move(parts));
    }
    case OpKind::div:
        break;
    }

    // y * z = x.
    const Endpoint zero = Endpoint::at(Rational(0));
    const bool x_has_zero = sign_of(cx.lo) <= 0 && sign_of(cx.hi) >= 0;
    const bool y_has_zero = sign_of(cy.lo) <= 0 && sign_of(cy.hi) >= 0;
    if (x_has_zero && y_has_zero)
        return RealSet::interval(Endpoint::minus_inf(), Endpoint::plus_inf()); // y = 0, x = 0, any z

    // With y != 0 the solutions are z = x / y. Divisor parts by sign, as
    // (infimum, supremum) of magnitudes; a zero infimum is excluded.
    struct DivisorPiece {
        Endpoint inf;
        Endpoint sup;
        bool mirrored;
    };
    std::vector<DivisorPiece> divisors;
    if (sign_of(cy.hi) > 0)
        divisors.push_back({sign_of(cy.lo) > 0 ? cy.lo : zero, cy.hi, false});
    if (sign_of(cy.lo) < 0)
        divisors.push_back({sign_of(cy.hi) < 0 ? neg(cy.hi) : zero, neg(cy.lo), true});

    std::vector<Component> parts;
    for (const SignedPiece& px : sign_pieces(cx)) {
        for (const DivisorPiece& d : divisors) {
            const Component q = quotient_of_magnitudes(px.magnitude, d.inf, d.sup);
            parts.push_back(px.mirrored != d.mirrored ? neg(q) : q);
        }
    }
    return RealSet::from_components(std::move(parts));
}

RealSet to_real_set(const ExtInterval& x)
{
    if (x.is_empty())
        return RealSet::empty();
    const Endpoint lo = x.lo().is_inf() ? Endpoint::minus_inf() : Endpoint::at(to_rational(x.lo()));
    const Endpoint hi = x.hi().is_inf() ? Endpoint::plus_inf() : Endpoint::at(to_rational(x.hi()));
    return RealSet::interval(lo, hi);
}

HullTable::HullTable(const FloatFormat& f) : format_(f)
{
    if (!f.enumerable())
        return;
    for (const Fp& v : enumerate(f)) {
        if (v.is_finite() && !(v.is_zero() && v.negative())) {
            finite_.push_back(v);
            values_.push_back(to_rational(v));
        }
    }
}

ExtInterval HullTable::hull(const RealSet& s) const
{
    if (s.is_empty())
        return ExtInterval::empty(format_);
    const Endpoint& lo = s.components().front().lo;
    const Endpoint& hi = s.components().back().hi;

    Fp l = Fp::infinity(format_, true);
    if (lo.kind == Endpoint::Kind::rational) {
        if (values_.empty()) {
            l = round(lo.value, RoundingDirection::toward_neg_inf, format_);
        } else {
            // Greatest value <= lo.
            auto it = std::upper_bound(values_.begin(), values_.end(), lo.value);
            if (it != values_.begin())
                l = finite_[static_cast<std::size_t>(it - values_.begin()) - 1];
        }
    }
    Fp h = Fp::infinity(format_);
    if (hi.kind == Endpoint::Kind::rational) {
        if (values_.empty()) {
            h = round(hi.value, RoundingDirection::toward_pos_inf, format_);
        } else {
            // Least value >= hi.
            auto it = std::lower_bound(values_.begin(), values_.end(), hi.value);
            if (it != values_.end())
                h = finite_[static_cast<std::size_t>(it - values_.begin())];
        }
    }
    return ExtInterval::from_bounds(l, h);
}

ExtInterval oracle_op(const ExtInterval& x, const ExtInterval& y, OpKind op, const FloatFormat& f)
{
    return HullTable(f).hull(exact_relational_set(to_real_set(x), to_real_set(y), op));
}

std::string to_string(const Mismatch& m)
{
    std::ostringstream os;
    os << isem::to_string(m.format) << ' ' << isem::to_string(m.op) << ' ' << isem::to_string(m.a) << ' '
       << isem::to_string(m.b) << ' ' << isem::to_string(m.mode) << ' ' << isem::to_string(m.got) << ' '
       << isem::to_string(m.expected);
    return os.str();
}

std::vector<Mismatch> exhaustive_compare(const FloatFormat& f, ZeroMode mode, const IntervalOps& impl,
                                         unsigned threads)
{
    std::vector<Fp> values = enumerate(f);
    if (mode == ZeroMode::infinite_precision)
        values.push_back(Fp::nan(f));

    const HullTable table(f);
    std::vector<ExtInterval> meaning;
    std::vector<RealSet> sets;
    for (const Fp& v : values) {
        meaning.push_back(interpret(v, mode));
        sets.push_back(to_real_set(meaning.back()));
    }

    auto run = [&](std::size_t begin, std::size_t end, std::vector<Mismatch>& out) {
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = 0; j < values.size(); ++j) {
                for (OpKind op : {OpKind::add, OpKind::sub, OpKind::mul, OpKind::div}) {
                    const ExtInterval got =
                        impl ? impl(op, meaning[i], meaning[j]) : fp_interval_op(values[i], values[j], op, mode);
                    const ExtInterval expected = table.hull(exact_relational_set(sets[i], sets[j], op));
                    if (got != expected)
                        out.push_back({f, op, values[i], values[j], mode, got, expected});
                }
            }
        }
    };

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, values.size()));
    std::vector<std::vector<Mismatch>> partial(threads);
    std::vector<std::exception_ptr> failures(threads);
    std::vector<std::thread> workers;
    const std::size_t chunk = (values.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(values.size(), t * chunk);
        const std::size_t end = std::min(values.size(), begin + chunk);
        workers.emplace_back([&, t, begin, end] {
            try {
                run(begin, end, partial[t]);
            } catch (...) {
                failures[t] = std::current_exception();
            }
        });
    }
    for (std::thread& w : workers)
        w.join();
    for (const std::exception_ptr& e : failures)
        if (e)
            std::rethrow_exception(e);

    std::vector<Mismatch> out;
    for (auto& p : partial)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

} // namespace isem::oracle
