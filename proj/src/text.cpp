#include "isem/text.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <regex>

namespace isem {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

mpz_class significand_of(const Fp& x)
{
    mpz_class c;
    const std::uint64_t sig = x.significand();
    mpz_import(c.get_mpz_t(), 1, 1, sizeof sig, 0, 0, &sig);
    return c;
}

// Exact decimal expansion of c * 2^q (c > 0).
std::string dyadic_decimal(const mpz_class& c, long q)
{
    if (q >= 0) {
        mpz_class v;
        mpz_mul_2exp(v.get_mpz_t(), c.get_mpz_t(), static_cast<mp_bitcnt_t>(q));
        return v.get_str();
    }
    const auto k = static_cast<unsigned long>(-q);
    mpz_class five;
    mpz_ui_pow_ui(five.get_mpz_t(), 5, k);
    std::string digits = mpz_class(c * five).get_str();
    if (digits.size() <= k)
        digits.insert(0, k - digits.size() + 1, '0');
    std::string out = digits.substr(0, digits.size() - k) + '.' + digits.substr(digits.size() - k);
    while (out.back() == '0')
        out.pop_back();
    if (out.back() == '.')
        out.pop_back();
    return out;
}

std::size_t significant_digits(const std::string& decimal)
{
    std::string d;
    for (char ch : decimal) {
        if (std::isdigit(static_cast<unsigned char>(ch)))
            d.push_back(ch);
    }
    const auto first = d.find_first_not_of('0');
    if (first == std::string::npos)
        return 1;
    const auto last = d.find_last_not_of('0');
    return last - first + 1;
}

// Exact decimal for a rational whose denominator is 2^a 5^b.
std::string terminating_decimal(const Rational& q)
{
    mpz_class den = q.get_den();
    unsigned long twos = mpz_scan1(den.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(den.get_mpz_t(), den.get_mpz_t(), twos);
    unsigned long fives = 0;
    while (den != 1) {
        if (!mpz_divisible_ui_p(den.get_mpz_t(), 5))
            throw std::invalid_argument("rational has no terminating decimal expansion");
        den /= 5;
        ++fives;
    }
    const unsigned long k = std::max(twos, fives);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, k);
    const mpz_class scaled = abs(q.get_num()) * (scale / q.get_den());
    std::string digits = scaled.get_str();
    if (k == 0)
        return digits;
    if (digits.size() <= k)
        digits.insert(0, k - digits.size() + 1, '0');
    std::string out = digits.substr(0, digits.size() - k) + '.' + digits.substr(digits.size() - k);
    while (out.back() == '0')
        out.pop_back();
    if (out.back() == '.')
        out.pop_back();
    return out;
}

constexpr long kMaxLiteralExponent = 100000;

Rational parse_decimal(std::string_view s, std::string_view whole)
{
    mpz_class mantissa = 0;
    long scale = 0;
    bool any_digit = false;
    bool seen_point = false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
        const char ch = s[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            mantissa = mantissa * 10 + (ch - '0');
            any_digit = true;
            if (seen_point)
                --scale;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit)
        throw ParseError("malformed number '" + std::string(whole) + "'");
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E')
            throw ParseError("malformed number '" + std::string(whole) + "'");
        const std::string exp(s.substr(i + 1));
        if (!std::regex_match(exp, std::regex("[+-]?[0-9]{1,7}")))
            throw ParseError("malformed exponent in '" + std::string(whole) + "'");
        scale += std::stol(exp);
    }
    if (scale > kMaxLiteralExponent || scale < -kMaxLiteralExponent)
        throw ParseError("exponent out of range in '" + std::string(whole) + "'");
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational r = scale >= 0 ? Rational(mantissa * p) : Rational(mantissa, p);
    r.canonicalize();
    return r;
}

Rational parse_hex(std::string_view s, std::string_view whole)
{
    mpz_class mantissa = 0;
    long scale = 0;
    bool any_digit = false;
    bool seen_point = false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
        const char ch = s[i];
        if (std::isxdigit(static_cast<unsigned char>(ch))) {
            const int v = std::isdigit(static_cast<unsigned char>(ch)) ? ch - '0' : std::tolower(ch) - 'a' + 10;
            mantissa = mantissa * 16 + v;
            any_digit = true;
            if (seen_point)
                scale -= 4;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit)
        throw ParseError("malformed hex float '" + std::string(whole) + "'");
    if (i < s.size()) {
        if (s[i] != 'p' && s[i] != 'P')
            throw ParseError("malformed hex float '" + std::string(whole) + "'");
        const std::string exp(s.substr(i + 1));
        if (!std::regex_match(exp, std::regex("[+-]?[0-9]{1,7}")))
            throw ParseError("malformed exponent in '" + std::string(whole) + "'");
        scale += std::stol(exp);
    }
    if (scale > 4 * kMaxLiteralExponent || scale < -4 * kMaxLiteralExponent)
        throw ParseError("exponent out of range in '" + std::string(whole) + "'");
    return Rational(mantissa) * pow2(scale);
}

} // namespace

FloatFormat parse_format(std::string_view text)
{
    const std::string t = lower(trim(text));
    if (t == "b64" || t == "binary64")
        return FloatFormat::binary64();
    if (t == "b32" || t == "binary32")
        return FloatFormat::binary32();
    static const std::regex pattern("p([0-9]{1,2})e(-?[0-9]{1,8}):(-?[0-9]{1,8})(ns)?");
    std::smatch m;
    if (!std::regex_match(t, m, pattern))
        throw ParseError("bad format descriptor '" + std::string(text) + "' (expected b64 or p<P>e<EMIN>:<EMAX>[ns])");
    FloatFormat f{std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), !m[4].matched};
    try {
        f.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad format descriptor: ") + e.what());
    }
    return f;
}

std::string to_string(const FloatFormat& f)
{
    if (f == FloatFormat::binary64())
        return "b64";
    if (f == FloatFormat::binary32())
        return "b32";
    return "p" + std::to_string(f.precision) + "e" + std::to_string(f.e_min) + ":" + std::to_string(f.e_max)
        + (f.subnormals ? "" : "ns");
}

std::string to_decimal_string(const Fp& x)
{
    if (!x.is_finite_nonzero())
        return to_string(x);
    return (x.negative() ? "-" : "") + dyadic_decimal(significand_of(x), x.quantum());
}

std::string to_hex_string(const Fp& x)
{
    if (!x.is_finite_nonzero())
        return to_string(x);
    const std::uint64_t c = x.significand();
    const int bits = 64 - std::countl_zero(c);
    const long exponent = static_cast<long>(x.quantum()) + bits - 1;
    std::uint64_t frac = c - (std::uint64_t{1} << (bits - 1));
    int frac_bits = bits - 1;
    const int pad = (4 - frac_bits % 4) % 4;
    frac <<= pad;
    frac_bits += pad;
    std::string hex;
    for (int shift = frac_bits - 4; shift >= 0; shift -= 4)
        hex.push_back("0123456789abcdef"[(frac >> shift) & 0xF]);
    while (!hex.empty() && hex.back() == '0')
        hex.pop_back();
    std::string out = x.negative() ? "-0x1" : "0x1";
    if (!hex.empty())
        out += "." + hex;
    out += "p";
    out += exponent >= 0 ? "+" : "-";
    out += std::to_string(exponent >= 0 ? exponent : -exponent);
    return out;
}

std::string to_string(const Fp& x)
{
    switch (x.kind()) {
    case Fp::Kind::nan:
        return "nan";
    case Fp::Kind::infinity:
        return x.negative() ? "-inf" : "+inf";
    case Fp::Kind::zero:
        return x.negative() ? "-0" : "+0";
    case Fp::Kind::finite:
        break;
    }
    // Plain decimal is only attempted when it cannot be enormous.
    const int bits = 64 - std::countl_zero(x.significand());
    if (x.quantum() > -80 && x.quantum() + bits < 80) {
        std::string dec = to_decimal_string(x);
        if (significant_digits(dec) <= 17)
            return dec;
    }
    return to_hex_string(x);
}

Literal parse_literal(std::string_view text)
{
    std::string_view s = trim(text);
    Literal lit;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        lit.negative = s.front() == '-';
        s.remove_prefix(1);
    }
    const std::string word = lower(s);
    if (word == "inf" || word == "infinity") {
        lit.kind = Literal::Kind::infinity;
        return lit;
    }
    if (word == "nan") {
        lit.kind = Literal::Kind::nan;
        lit.negative = false;
        return lit;
    }
    if (word.size() > 2 && word[0] == '0' && word[1] == 'x')
        lit.value = parse_hex(std::string_view(word).substr(2), text);
    else
        lit.value = parse_decimal(word, text);
    return lit;
}

std::string to_string(const Literal& lit)
{
    const std::string sign = lit.negative ? "-" : "";
    switch (lit.kind) {
    case Literal::Kind::infinity:
        return sign + "inf";
    case Literal::Kind::nan:
        return "nan";
    case Literal::Kind::number:
        break;
    }
    return sign + terminating_decimal(lit.value);
}

Fp to_fp(const Literal& lit, const FloatFormat& f, bool* inexact)
{
    if (inexact)
        *inexact = false;
    switch (lit.kind) {
    case Literal::Kind::infinity:
        return Fp::infinity(f, lit.negative);
    case Literal::Kind::nan:
        return Fp::nan(f);
    case Literal::Kind::number:
        break;
    }
    if (sgn(lit.value) == 0)
        return Fp::zero(f, lit.negative);
    const Rational q = lit.negative ? Rational(-lit.value) : lit.value;
    const Fp x = round(q, RoundingDirection::nearest, f);
    if (inexact)
        *inexact = !x.is_finite() || to_rational(x) != q;
    return x;
}

ExtInterval parse_interval(std::string_view text, const FloatFormat& f)
{
    const std::string_view s = trim(text);
    if (lower(s) == "empty")
        return ExtInterval::empty(f);
    if (s.size() < 5 || (s.front() != '[' && s.front() != '(') || (s.back() != ']' && s.back() != ')'))
        throw ParseError("bad interval '" + std::string(text) + "'");
    const std::string_view body = s.substr(1, s.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos)
        throw ParseError("interval needs exactly one comma: '" + std::string(text) + "'");
    const Literal lo = parse_literal(body.substr(0, comma));
    const Literal hi = parse_literal(body.substr(comma + 1));
    if (lo.kind == Literal::Kind::nan || hi.kind == Literal::Kind::nan)
        throw ParseError("NaN interval bound in '" + std::string(text) + "'");

    auto bound = [&](const Literal& lit, bool is_lower, char bracket) -> ExtReal {
        const bool open = bracket == '(' || bracket == ')';
        if (lit.kind == Literal::Kind::infinity) {
            if (lit.negative != is_lower)
                throw ParseError("interval lower bound +inf or upper bound -inf in '" + std::string(text) + "'");
            if (!open)
                throw ParseError("infinite bound needs a round bracket in '" + std::string(text) + "'");
            return is_lower ? ExtReal::neg_infinity() : ExtReal::pos_infinity();
        }
        if (open)
            throw ParseError("finite bounds are closed: '" + std::string(text) + "'");
        return ExtReal(lit.negative ? Rational(-lit.value) : lit.value);
    };
    const ExtReal l = bound(lo, true, s.front());
    const ExtReal h = bound(hi, false, s.back());
    if (l > h)
        throw ParseError("interval lower bound exceeds upper bound: '" + std::string(text) + "'");
    return hull(l, h, f);
}

std::string to_string(const ExtInterval& x)
{
    if (x.is_empty())
        return "empty";
    auto bound = [](const Fp& b) { return b.is_zero() ? std::string("0") : to_string(b); };
    std::string out = x.lo().is_inf() ? "(-inf" : "[" + bound(x.lo());
    out += ", ";
    out += x.hi().is_inf() ? "+inf)" : bound(x.hi()) + "]";
    return out;
}

} // namespace isem
