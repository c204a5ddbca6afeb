#include "isem/fpformat.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace isem {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b)
{
    if (b > std::numeric_limits<std::uint64_t>::max() - a)
        return std::numeric_limits<std::uint64_t>::max();
    return a + b;
}

std::uint64_t hidden_bit(const FloatFormat& f) { return std::uint64_t{1} << (f.precision - 1); }
std::uint64_t significand_limit(const FloatFormat& f) { return std::uint64_t{1} << f.precision; }

// floor(log2(num / den)) for num, den > 0.
long floor_log2(const mpz_class& num, const mpz_class& den)
{
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2))
        - static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    // 2^e <= num/den holds iff num >= den * 2^e.
    int c;
    if (e >= 0) {
        mpz_class shifted;
        mpz_mul_2exp(shifted.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        c = cmp(num, shifted);
    } else {
        mpz_class shifted;
        mpz_mul_2exp(shifted.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
        c = cmp(shifted, den);
    }
    return c < 0 ? e - 1 : e;
}

} // namespace

void FloatFormat::validate() const
{
    if (precision < 2 || precision > 63)
        throw std::invalid_argument("float format precision must lie in [2, 63]");
    if (e_min > e_max)
        throw std::invalid_argument("float format requires e_min <= e_max");
    if (e_min < -(1 << 24) || e_max > (1 << 24))
        throw std::invalid_argument("float format exponent range too large");
}

std::uint64_t FloatFormat::value_count() const
{
    const std::uint64_t per_binade = std::uint64_t{1} << (precision - 1);
    const auto binades = static_cast<std::uint64_t>(static_cast<std::int64_t>(e_max) - e_min + 1);
    std::uint64_t positives = saturating_mul(binades, per_binade);
    if (subnormals)
        positives = saturating_add(positives, per_binade - 1);
    return saturating_add(saturating_mul(positives, 2), 4);
}

bool FloatFormat::enumerable() const { return value_count() <= kEnumerationLimit; }

Fp Fp::zero(const FloatFormat& f, bool negative) { return Fp(f, Kind::zero, negative, 0, 0); }

Fp Fp::infinity(const FloatFormat& f, bool negative) { return Fp(f, Kind::infinity, negative, 0, 0); }

Fp Fp::nan(const FloatFormat& f) { return Fp(f, Kind::nan, false, 0, 0); }

Fp Fp::finite(const FloatFormat& f, bool negative, std::uint64_t significand, int quantum)
{
    if (significand == 0 || significand >= significand_limit(f))
        throw std::invalid_argument("significand out of range for format");
    if (quantum < f.min_quantum() || quantum > f.max_quantum())
        throw std::invalid_argument("exponent out of range for format");
    if (significand < hidden_bit(f)) {
        if (quantum != f.min_quantum() || !f.subnormals)
            throw std::invalid_argument("non-canonical or disabled subnormal encoding");
    }
    return Fp(f, Kind::finite, negative, significand, quantum);
}

Fp Fp::operator-() const
{
    if (kind_ == Kind::nan)
        return *this;
    Fp r = *this;
    r.negative_ = !negative_;
    return r;
}

std::partial_ordering compare(const Fp& a, const Fp& b)
{
    if (a.is_nan() || b.is_nan())
        return std::partial_ordering::unordered;
    auto rank = [](const Fp& x) {
        if (x.is_inf())
            return x.negative() ? -2 : 2;
        if (x.is_zero())
            return 0;
        return x.negative() ? -1 : 1;
    };
    const int ra = rank(a), rb = rank(b);
    if (ra != rb)
        return ra <=> rb;
    if (ra != 1 && ra != -1)
        return std::partial_ordering::equivalent;
    // Same sign, both finite nonzero: (quantum, significand) orders magnitude.
    auto mag = a.quantum() != b.quantum() ? a.quantum() <=> b.quantum()
                                          : a.significand() <=> b.significand();
    return ra > 0 ? std::partial_ordering(mag) : std::partial_ordering(0 <=> mag);
}

Fp max_finite(const FloatFormat& f)
{
    return Fp::finite(f, false, significand_limit(f) - 1, f.max_quantum());
}

Fp min_pos(const FloatFormat& f)
{
    return Fp::finite(f, false, f.subnormals ? 1 : hidden_bit(f), f.min_quantum());
}

namespace {

// Successor of a nonnegative magnitude (zero or finite positive).
Fp magnitude_up(const Fp& x)
{
    const FloatFormat& f = x.format();
    if (x.is_zero())
        return min_pos(f);
    std::uint64_t c = x.significand() + 1;
    int q = x.quantum();
    if (c == significand_limit(f)) {
        c = hidden_bit(f);
        ++q;
        if (q > f.max_quantum())
            return Fp::infinity(f);
    }
    return Fp::finite(f, false, c, q);
}

// Predecessor of a finite positive magnitude; zero below m.
Fp magnitude_down(const Fp& x)
{
    const FloatFormat& f = x.format();
    std::uint64_t c = x.significand() - 1;
    int q = x.quantum();
    if (c < hidden_bit(f)) {
        if (q > f.min_quantum()) {
            c = significand_limit(f) - 1;
            --q;
        } else if (!f.subnormals || c == 0) {
            return Fp::zero(f);
        }
    }
    return Fp::finite(f, false, c, q);
}

Fp abs_of(const Fp& x) { return x.negative() ? -x : x; }

} // namespace

Fp next_up(const Fp& x)
{
    if (x.is_nan())
        throw std::domain_error("next_up of NaN");
    if (x.is_pos_inf())
        throw std::domain_error("next_up of +inf");
    if (x.is_neg_inf())
        return -max_finite(x.format());
    if (x.is_zero())
        return min_pos(x.format());
    if (!x.negative())
        return magnitude_up(x);
    return -magnitude_down(abs_of(x));
}

Fp next_down(const Fp& x)
{
    if (x.is_nan())
        throw std::domain_error("next_down of NaN");
    if (x.is_neg_inf())
        throw std::domain_error("next_down of -inf");
    return -next_up(-x);
}

Fp round(const Rational& q, RoundingDirection dir, const FloatFormat& f)
{
    const int s = sgn(q);
    if (s == 0)
        return Fp::zero(f);
    const bool neg = s < 0;
    mpz_class num = abs(q.get_num());
    const mpz_class& den = q.get_den();

    // Whether the magnitude is pushed away from zero when inexact.
    auto away_when_inexact = [&] {
        switch (dir) {
        case RoundingDirection::toward_pos_inf:
            return !neg;
        case RoundingDirection::toward_neg_inf:
            return neg;
        case RoundingDirection::toward_zero:
            return false;
        case RoundingDirection::nearest:
            break;
        }
        return false;
    };
    auto overflow = [&] {
        const bool to_inf = dir == RoundingDirection::nearest || away_when_inexact();
        Fp r = to_inf ? Fp::infinity(f) : max_finite(f);
        return neg ? -r : r;
    };

    const long e = floor_log2(num, den);
    if (e > f.e_max)
        return overflow();

    const int p = f.precision;
    long quantum = std::max<long>(e, f.e_min) - (p - 1);
    mpz_class a = num;
    mpz_class b = den;
    if (quantum >= 0)
        mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(quantum));
    else
        mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(-quantum));
    mpz_class n, rem;
    mpz_fdiv_qr(n.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    std::uint64_t c = mpz_get_ui(n.get_mpz_t());
    const bool inexact = rem != 0;
    int half_cmp = 0; // remainder vs half a unit
    if (inexact) {
        mpz_class twice = rem * 2;
        half_cmp = cmp(twice, b);
    }

    if (!f.subnormals && c < hidden_bit(f)) {
        // Only 0 and m bracket the value.
        bool to_m;
        if (dir == RoundingDirection::nearest) {
            const std::uint64_t quarter = hidden_bit(f) >> 1;
            to_m = c > quarter || (c == quarter && inexact);
        } else {
            to_m = away_when_inexact();
        }
        if (!to_m)
            return Fp::zero(f, neg);
        Fp m = min_pos(f);
        return neg ? -m : m;
    }

    bool away = false;
    if (inexact) {
        if (dir == RoundingDirection::nearest)
            away = half_cmp > 0 || (half_cmp == 0 && (c & 1));
        else
            away = away_when_inexact();
    }
    if (away) {
        ++c;
        if (c == significand_limit(f)) {
            c = hidden_bit(f);
            ++quantum;
        }
    }
    if (quantum > f.max_quantum())
        return overflow();
    if (c == 0)
        return Fp::zero(f, neg);
    return Fp::finite(f, neg, c, static_cast<int>(quantum));
}

Rational to_rational(const Fp& x)
{
    if (!x.is_finite())
        throw std::domain_error("to_rational of a non-finite value");
    if (x.is_zero())
        return Rational(0);
    mpz_class c;
    const std::uint64_t sig = x.significand();
    mpz_import(c.get_mpz_t(), 1, 1, sizeof sig, 0, 0, &sig);
    Rational r(c);
    if (x.quantum() >= 0)
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(x.quantum()));
    else
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-x.quantum()));
    if (x.negative())
        r = -r;
    return r;
}

std::vector<Fp> enumerate(const FloatFormat& f)
{
    f.validate();
    const std::uint64_t count = f.value_count();
    if (count > kEnumerationLimit)
        throw EnumerationRefused("format has " + std::to_string(count)
                                 + " values, above the enumeration limit");
    std::vector<Fp> positives;
    positives.reserve(static_cast<std::size_t>((count - 4) / 2));
    for (Fp x = min_pos(f); !x.is_inf(); x = next_up(x))
        positives.push_back(x);

    std::vector<Fp> out;
    out.reserve(static_cast<std::size_t>(count));
    out.push_back(Fp::infinity(f, true));
    for (auto it = positives.rbegin(); it != positives.rend(); ++it)
        out.push_back(-*it);
    out.push_back(Fp::zero(f, true));
    out.push_back(Fp::zero(f, false));
    out.insert(out.end(), positives.begin(), positives.end());
    out.push_back(Fp::infinity(f));
    return out;
}

Fp from_double(double d)
{
    const FloatFormat f = FloatFormat::binary64();
    const auto bits = std::bit_cast<std::uint64_t>(d);
    const bool neg = (bits >> 63) != 0;
    const auto biased = static_cast<int>((bits >> 52) & 0x7FF);
    const std::uint64_t frac = bits & ((std::uint64_t{1} << 52) - 1);
    if (biased == 0x7FF)
        return frac != 0 ? Fp::nan(f) : Fp::infinity(f, neg);
    if (biased == 0) {
        if (frac == 0)
            return Fp::zero(f, neg);
        return Fp::finite(f, neg, frac, f.min_quantum());
    }
    return Fp::finite(f, neg, frac | (std::uint64_t{1} << 52), biased - 1075);
}

double to_double(const Fp& x)
{
    if (x.format() != FloatFormat::binary64())
        throw std::invalid_argument("to_double requires a binary64 value");
    const std::uint64_t sign = x.negative() ? std::uint64_t{1} << 63 : 0;
    switch (x.kind()) {
    case Fp::Kind::nan:
        return std::numeric_limits<double>::quiet_NaN();
    case Fp::Kind::infinity:
        return std::bit_cast<double>(sign | (std::uint64_t{0x7FF} << 52));
    case Fp::Kind::zero:
        return std::bit_cast<double>(sign);
    case Fp::Kind::finite:
        break;
    }
    const std::uint64_t hidden = std::uint64_t{1} << 52;
    if (x.significand() < hidden)
        return std::bit_cast<double>(sign | x.significand());
    const auto biased = static_cast<std::uint64_t>(x.quantum() + 1075);
    return std::bit_cast<double>(sign | (biased << 52) | (x.significand() - hidden));
}

} // namespace isem
