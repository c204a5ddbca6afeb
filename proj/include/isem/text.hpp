#pragma once

#include "isem/interval.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace isem {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// "b64" (also "b32"), or "p<P>e<EMIN>:<EMAX>" with an optional "ns" suffix
// that disables subnormals, e.g. "p3e-2:3", "p2e0:0ns".
FloatFormat parse_format(std::string_view text);
std::string to_string(const FloatFormat& f);

// Specials print as +0, -0, +inf, -inf, nan. Finite values print as an exact
// decimal when it has at most 17 significant digits, else as a hex float.
std::string to_string(const Fp& x);
std::string to_decimal_string(const Fp& x);
std::string to_hex_string(const Fp& x);

// A numeric literal before it is placed in a format.
struct Literal {
    enum class Kind { number, infinity, nan };

    Kind kind = Kind::number;
    bool negative = false; // also distinguishes -0 from +0
    Rational value;        // magnitude, for numbers

    friend bool operator==(const Literal&, const Literal&) = default;
};

// Decimal ("1", "0.375", "1e-3", ".5"), hex float ("0x1.8p+1"), "inf",
// "infinity", "nan", each with an optional leading sign.
Literal parse_literal(std::string_view text);
std::string to_string(const Literal& lit);

// Rounds to nearest; sets *inexact when the value is not representable.
Fp to_fp(const Literal& lit, const FloatFormat& f, bool* inexact = nullptr);

// "[a, b]", "[a, inf)", "(-inf, b]", "(-inf, inf)", "empty". Bounds are
// rounded outward into the format.
ExtInterval parse_interval(std::string_view text, const FloatFormat& f);
std::string to_string(const ExtInterval& x);

} // namespace isem
