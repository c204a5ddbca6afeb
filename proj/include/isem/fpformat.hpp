#pragma once

#include "isem/rational.hpp"

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace isem {

// A binary floating-point format. Normal values are c * 2^q with
// 2^(p-1) <= c < 2^p and e_min <= q + p - 1 <= e_max; subnormals (when
// enabled) share the smallest quantum with c < 2^(p-1).
struct FloatFormat {
    int precision = 53;
    int e_min = -1022;
    int e_max = 1023;
    bool subnormals = true;

    static FloatFormat binary64() { return {53, -1022, 1023, true}; }
    static FloatFormat binary32() { return {24, -126, 127, true}; }

    // Throws std::invalid_argument unless 2 <= p <= 63 and e_min <= e_max.
    void validate() const;

    int min_quantum() const { return e_min - (precision - 1); }
    int max_quantum() const { return e_max - (precision - 1); }

    // Number of values enumerate() would return (both infinities and both
    // zeros included, NaN excluded). Saturates at UINT64_MAX.
    std::uint64_t value_count() const;
    bool enumerable() const;

    friend bool operator==(const FloatFormat&, const FloatFormat&) = default;
};

// Formats with more values than this are refused by enumerate().
inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 24;

class EnumerationRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RoundingDirection { toward_neg_inf, toward_pos_inf, toward_zero, nearest };

// One datum of a FloatFormat. Finite nonzero values are stored canonically
// as (sign, significand, quantum exponent).
class Fp {
public:
    enum class Kind : std::uint8_t { finite, zero, infinity, nan };

    static Fp zero(const FloatFormat& f, bool negative = false);
    static Fp infinity(const FloatFormat& f, bool negative = false);
    static Fp nan(const FloatFormat& f);
    // Throws std::invalid_argument when (significand, quantum) is not the
    // canonical encoding of a value of the format.
    static Fp finite(const FloatFormat& f, bool negative, std::uint64_t significand, int quantum);

    const FloatFormat& format() const { return fmt_; }
    Kind kind() const { return kind_; }
    bool negative() const { return negative_; }
    std::uint64_t significand() const { return significand_; }
    int quantum() const { return quantum_; }

    bool is_nan() const { return kind_ == Kind::nan; }
    bool is_inf() const { return kind_ == Kind::infinity; }
    bool is_zero() const { return kind_ == Kind::zero; }
    // Finite includes the zeros.
    bool is_finite() const { return kind_ == Kind::finite || kind_ == Kind::zero; }
    bool is_finite_nonzero() const { return kind_ == Kind::finite; }
    bool is_pos_inf() const { return is_inf() && !negative_; }
    bool is_neg_inf() const { return is_inf() && negative_; }

    Fp operator-() const;

    // Encoding identity: +0 != -0, NaN == NaN.
    friend bool operator==(const Fp&, const Fp&) = default;

private:
    Fp(const FloatFormat& f, Kind k, bool neg, std::uint64_t c, int q)
        : fmt_(f), kind_(k), negative_(neg), significand_(c), quantum_(q)
    {
    }

    FloatFormat fmt_;
    Kind kind_;
    bool negative_;
    std::uint64_t significand_;
    int quantum_;
};

// Real-value order: -inf < finite < +inf, -0 == +0, NaN unordered.
std::partial_ordering compare(const Fp& a, const Fp& b);
inline bool same_value(const Fp& a, const Fp& b) { return compare(a, b) == 0; }

Fp max_finite(const FloatFormat& f);
Fp min_pos(const FloatFormat& f);

// Throw std::domain_error on NaN and on +inf (next_up) / -inf (next_down).
Fp next_up(const Fp& x);
Fp next_down(const Fp& x);

// Correct rounding of an exact rational. Total. An exact zero rounds to +0;
// a negative q that rounds to zero gives -0. Nearest breaks ties to even.
Fp round(const Rational& q, RoundingDirection dir, const FloatFormat& f);

// Exact value of a finite datum; throws std::domain_error otherwise.
Rational to_rational(const Fp& x);

// All non-NaN values in ascending order: -inf, negatives, -0, +0, positives,
// +inf. Throws EnumerationRefused above kEnumerationLimit.
std::vector<Fp> enumerate(const FloatFormat& f);

// binary64 interchange with the host double.
Fp from_double(double d);
double to_double(const Fp& x);

} // namespace isem
