#pragma once

#include "isem/interval.hpp"

#include <optional>

namespace isem {

// How the signed zeros (and NaN) are read as sets of reals.
//  finite_precision:   +0 -> [0, m], -0 -> [-m, 0], NaN has no meaning.
//  infinite_precision: +0, -0 -> [0, 0], NaN -> empty set.
enum class ZeroMode { finite_precision, infinite_precision };

using FpOpKind = OpKind;

const char* to_string(ZeroMode mode);

// Throws std::domain_error for NaN under finite-precision zeros.
ExtInterval interpret(const Fp& x, ZeroMode mode);

// The float whose interpretation is exactly `x`, if there is one.
std::optional<Fp> represent(const ExtInterval& x, ZeroMode mode);

// Interval meaning of `a op b`: the interval operation applied to the
// interpretations of the operands. Never NaN-valued.
ExtInterval fp_interval_op(const Fp& a, const Fp& b, FpOpKind op, ZeroMode mode);

// Bounds of an interval as floats. A real-zero bound becomes -0 when the
// interval lies in (-inf, 0] and is not [0, 0], else +0. Empty gives NaN.
Fp lower_bound(const ExtInterval& x);
Fp upper_bound(const ExtInterval& x);

// Upper (toward_pos_inf) or lower (toward_neg_inf) bound of
// fp_interval_op. Other directions throw std::invalid_argument.
Fp fp_scalar_op(const Fp& a, const Fp& b, FpOpKind op, RoundingDirection dir, ZeroMode mode);

enum class Conformance { conforms, deviates, newly_defined };

const char* to_string(Conformance c);

// Compares interval semantics with IEEE 754 under both directed roundings.
// conforms: for each direction the IEEE result equals the extracted bound or
// is the float that represents the whole result interval. newly_defined: IEEE
// gives NaN where the interval is non-empty. Anything else deviates.
Conformance classify_vs_ieee(const Fp& a, const Fp& b, FpOpKind op, ZeroMode mode);

} // namespace isem
