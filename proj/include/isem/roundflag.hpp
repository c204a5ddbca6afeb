#pragma once

#include "isem/fpformat.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isem {

// Pre-rounded significand b0.b1 b2 ... br | b(r+1) ... bW: bits [0, r] are
// kept, bits [r+1, W] are discarded.
class PreRoundedWord {
public:
    // bits[0] is b0. Requires 1 <= r and r + 1 <= W (= bits.size() - 1).
    PreRoundedWord(bool negative, std::vector<bool> bits, std::size_t r);

    // Text form "1.011|01", optionally signed: the bar separates kept and
    // discarded bits.
    static PreRoundedWord parse(std::string_view text);

    bool negative() const { return negative_; }
    const std::vector<bool>& bits() const { return bits_; }
    std::size_t r() const { return r_; }
    std::size_t w() const { return bits_.size() - 1; }
    bool bit(std::size_t i) const { return bits_.at(i); }

    // Magnitude b0.b1...bW as an exact rational.
    Rational magnitude() const;

private:
    bool negative_;
    std::vector<bool> bits_;
    std::size_t r_;
};

std::string to_string(const PreRoundedWord& w);

enum class RoundFlag { rounded_up, not_rounded_up, exact };

const char* to_string(RoundFlag f);

// The R-up table: the flag is set exactly when b(r+1) is 1, whatever b(r) is.
bool round_up_table(bool b_r, bool b_r_plus_1);

// exact when every discarded bit is zero, otherwise the table's verdict.
RoundFlag compute_flag(const PreRoundedWord& w);

struct FlaggedRound {
    std::vector<bool> kept; // b0..br after the optional increment
    bool carry = false;     // increment carried out of b0
    RoundFlag flag = RoundFlag::exact;
};

// Round the magnitude as the flag dictates: add one unit in bit r when
// rounded_up, otherwise truncate.
FlaggedRound apply_flagged_round(const PreRoundedWord& w);

std::string kept_to_string(const FlaggedRound& r);

// Given a round-to-nearest result and its flag, the directed-rounding bounds
// of the exact value. The flag refers to the magnitude, so for negative
// results rounded_up means the exact value lies above `nearest`. An infinite
// nearest with an inexact flag brackets the overflow side: (M, +inf) or
// (-inf, -M). Throws std::domain_error for NaN, or infinity with exact.
std::pair<Fp, Fp> recover_bounds(const Fp& nearest, RoundFlag flag);

struct FlaggedValue {
    Fp nearest;
    RoundFlag flag;
};

// Places the flagged rounding of +-w * 2^exponent in `f` (b0 is the 2^exponent
// digit). Requires b0 = 1, r = precision - 1 and e_min <= exponent <= e_max;
// a carry past e_max overflows to infinity.
FlaggedValue flagged_round_to_format(const PreRoundedWord& w, int exponent, const FloatFormat& f);

} // namespace isem
