#include "isem/roundflag.hpp"

#include <algorithm>
#include <stdexcept>

namespace isem {

PreRoundedWord::PreRoundedWord(bool negative, std::vector<bool> bits, std::size_t r)
    : negative_(negative), bits_(std::move(bits)), r_(r)
{
    if (bits_.empty())
        throw std::invalid_argument("pre-rounded word has no bits");
    if (r_ < 1 || r_ + 1 > w())
        throw std::invalid_argument("pre-rounded word needs 1 <= r < W");
}

PreRoundedWord PreRoundedWord::parse(std::string_view text)
{
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    const auto dot = text.find('.');
    const auto bar = text.find('|');
    if (dot != 1 || bar == std::string_view::npos || bar < dot)
        throw std::invalid_argument("pre-rounded word must look like 1.011|01");
    std::vector<bool> bits;
    std::size_t r = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (i == dot || i == bar)
            continue;
        if (ch != '0' && ch != '1')
            throw std::invalid_argument("pre-rounded word may only contain 0, 1, '.' and '|'");
        bits.push_back(ch == '1');
        if (i < bar)
            r = bits.size() - 1;
    }
    return PreRoundedWord(negative, std::move(bits), r);
}

Rational PreRoundedWord::magnitude() const
{
    mpz_class v = 0;
    for (bool b : bits_)
        v = v * 2 + (b ? 1 : 0);
    return Rational(v) * pow2(-static_cast<long>(w()));
}

std::string to_string(const PreRoundedWord& w)
{
    std::string out = w.negative() ? "-" : "";
    for (std::size_t i = 0; i <= w.w(); ++i) {
        out.push_back(w.bit(i) ? '1' : '0');
        if (i == 0)
            out.push_back('.');
        if (i == w.r())
            out.push_back('|');
    }
    return out;
}

const char* to_string(RoundFlag f)
{
    switch (f) {
    case RoundFlag::rounded_up:
        return "rounded-up";
    case RoundFlag::not_rounded_up:
        return "not-rounded-up";
    case RoundFlag::exact:
        return "exact";
    }
    return "?";
}

bool round_up_table(bool /*b_r*/, bool b_r_plus_1) { return b_r_plus_1; }

RoundFlag compute_flag(const PreRoundedWord& w)
{
    const auto& bits = w.bits();
    const bool sticky = std::any_of(bits.begin() + static_cast<std::ptrdiff_t>(w.r() + 1), bits.end(),
                                    [](bool b) { return b; });
    if (!sticky)
        return RoundFlag::exact;
    return round_up_table(w.bit(w.r()), w.bit(w.r() + 1)) ? RoundFlag::rounded_up : RoundFlag::not_rounded_up;
}

FlaggedRound apply_flagged_round(const PreRoundedWord& w)
{
    FlaggedRound out;
    out.flag = compute_flag(w);
    out.kept.assign(w.bits().begin(), w.bits().begin() + static_cast<std::ptrdiff_t>(w.r() + 1));
    if (out.flag != RoundFlag::rounded_up)
        return out;
    bool carry = true;
    for (std::size_t i = out.kept.size(); i-- > 0 && carry;) {
        carry = out.kept[i];
        out.kept[i] = !out.kept[i];
    }
    out.carry = carry;
    return out;
}

std::string kept_to_string(const FlaggedRound& r)
{
    std::string out = r.carry ? "1" : "";
    for (std::size_t i = 0; i < r.kept.size(); ++i) {
        out.push_back(r.kept[i] ? '1' : '0');
        if (i == 0)
            out.push_back('.');
    }
    return out;
}

std::pair<Fp, Fp> recover_bounds(const Fp& nearest, RoundFlag flag)
{
    if (nearest.is_nan())
        throw std::domain_error("recover_bounds of NaN");
    if (flag == RoundFlag::exact) {
        if (nearest.is_inf())
            throw std::domain_error("an infinite result cannot be exact");
        return {nearest, nearest};
    }
    if (nearest.is_inf()) {
        const Fp big = max_finite(nearest.format());
        return nearest.negative() ? std::pair{nearest, -big} : std::pair{big, nearest};
    }
    // Whether the exact value lies below `nearest`.
    const bool exact_below = (flag == RoundFlag::rounded_up) != nearest.negative();
    if (exact_below)
        return {next_down(nearest), nearest};
    return {nearest, next_up(nearest)};
}

FlaggedValue flagged_round_to_format(const PreRoundedWord& w, int exponent, const FloatFormat& f)
{
    if (!w.bit(0))
        throw std::invalid_argument("flagged rounding needs a normalised word (b0 = 1)");
    if (w.r() + 1 != static_cast<std::size_t>(f.precision))
        throw std::invalid_argument("kept bits must match the format precision");
    if (exponent < f.e_min || exponent > f.e_max)
        throw std::invalid_argument("exponent outside the format range");
    const FlaggedRound fr = apply_flagged_round(w);
    std::uint64_t c = 0;
    for (bool b : fr.kept)
        c = (c << 1) | (b ? 1 : 0);
    int quantum = exponent - (f.precision - 1);
    if (fr.carry) {
        c = std::uint64_t{1} << (f.precision - 1);
        ++quantum;
    }
    const Fp nearest = quantum > f.max_quantum() ? Fp::infinity(f, w.negative())
                                                 : Fp::finite(f, w.negative(), c, quantum);
    return {nearest, fr.flag};
}

} // namespace isem
