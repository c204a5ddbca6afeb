#pragma once

// Brute-force reference for the interval operations. Works from the
// definitions (solution sets of x+y = z, y+z = x, x*y = z, y*z = x) by exact
// case analysis and hulls by searching the enumerated format, sharing no
// code with the interval module's bound recipes.

#include "isem/semantics.hpp"

#include <functional>
#include <string>
#include <vector>

namespace isem::oracle {

// Endpoint of a closed component: a rational or an infinity.
struct Endpoint {
    enum class Kind { minus_infinity, rational, plus_infinity };

    Kind kind = Kind::rational;
    Rational value;

    static Endpoint minus_inf() { return {Kind::minus_infinity, {}}; }
    static Endpoint plus_inf() { return {Kind::plus_infinity, {}}; }
    static Endpoint at(const Rational& v) { return {Kind::rational, v}; }

    friend bool operator==(const Endpoint& a, const Endpoint& b);
};

bool less(const Endpoint& a, const Endpoint& b);

struct Component {
    Endpoint lo;
    Endpoint hi;
};

// Finite union of closed, disjoint, ordered components. No components means
// the empty set.
class RealSet {
public:
    static RealSet empty() { return RealSet{}; }
    static RealSet interval(const Endpoint& lo, const Endpoint& hi);
    static RealSet from_components(std::vector<Component> parts);

    bool is_empty() const { return parts_.empty(); }
    const std::vector<Component>& components() const { return parts_; }
    bool contains(const Rational& q) const;

    friend bool operator==(const RealSet& a, const RealSet& b);

private:
    std::vector<Component> parts_;
};

std::string to_string(const RealSet& s);

// Closure of the exact solution set for single-component (or empty) X, Y.
RealSet exact_relational_set(const RealSet& x, const RealSet& y, OpKind op);

RealSet to_real_set(const ExtInterval& x);

// Least floating-point interval containing the set, found by searching the
// sorted values of an enumerable format (directed rounding otherwise).
class HullTable {
public:
    explicit HullTable(const FloatFormat& f);
    ExtInterval hull(const RealSet& s) const;

private:
    FloatFormat format_;
    std::vector<Fp> finite_;
    std::vector<Rational> values_;
};

ExtInterval oracle_op(const ExtInterval& x, const ExtInterval& y, OpKind op, const FloatFormat& f);

struct Mismatch {
    FloatFormat format;
    OpKind op;
    Fp a;
    Fp b;
    ZeroMode mode;
    ExtInterval got;
    ExtInterval expected;
};

// "format op a b mode got expected"
std::string to_string(const Mismatch& m);

// Stand-in for the interval operations, used to inject faults.
using IntervalOps = std::function<ExtInterval(OpKind, const ExtInterval&, const ExtInterval&)>;

// Every ordered pair of format values (NaN included under infinite-precision
// zeros) and every operation: fp_interval_op (or `impl` applied to the
// interpretations) against the oracle. Throws EnumerationRefused for formats
// above the enumeration limit.
std::vector<Mismatch> exhaustive_compare(const FloatFormat& f, ZeroMode mode, const IntervalOps& impl = {},
                                         unsigned threads = 0);

} // namespace isem::oracle
