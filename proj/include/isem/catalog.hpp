#pragma once

#include "isem/semantics.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace isem {

// Operand classes used by the identity catalog.
enum class OperandClass {
    finite_nonzero,        // a, any finite nonzero value
    positive,              // a > 0 finite
    positive_below_one,    // 0 < a < 1
    positive_at_least_one, // a >= 1 finite
    pos_zero,
    neg_zero,
    any_zero, // +0 and -0
    pos_inf,
    neg_inf,
};

const char* to_string(OperandClass c);
bool matches(OperandClass c, const Fp& x);

// Which group an identity belongs to.
enum class IdentityGroup {
    ieee_defined,     // IEEE 754 gives a result; interval semantics may differ
    formerly_invalid, // IEEE 754 gives NaN
    exact_zero,       // re-derived with infinite-precision zeros
};

const char* to_string(IdentityGroup g);

struct IdentityRecord {
    std::string name;
    IdentityGroup group;
    OperandClass lhs;
    OpKind op;
    OperandClass rhs;
    ZeroMode mode;
    // Format-parametric expected interval, in terms of m, M, a, rd and ru.
    std::string expected_text;
    std::function<ExtInterval(const Fp& lhs, const Fp& rhs)> expected;
    // Stated relationship to IEEE 754 for these operands, when one is made.
    std::function<std::optional<Conformance>(const Fp& lhs, const Fp& rhs)> claim;
    // Non-empty when the stated interval disagrees with the relational
    // definition; says why. The implementation follows the definition.
    std::string dispute = {};

    std::string pattern() const;
};

const std::vector<IdentityRecord>& identity_catalog();

// Operand samples of a class: every matching value for enumerable formats,
// otherwise a fixed representative set (powers of two, 0.5, 1, m, M, ...).
std::vector<Fp> sample_operands(OperandClass c, const FloatFormat& f);

} // namespace isem
