#pragma once

// Arithmetic expressions over float literals, evaluated under interval
// semantics. Grammar:
//
//   expr    = term , { ( "+" | "-" ) , term } ;
//   term    = unary , { ( "*" | "/" ) , unary } ;
//   unary   = ( "-" | "+" ) , unary | primary ;
//   primary = number | "inf" | "infinity" | "nan" | "(" , expr , ")" ;
//   number  = decimal | hexfloat ;
//
// A sign applied directly to a literal is folded into it, so "-0" is the
// negative zero and "(-0)/(+0)" parses as Div(-0, +0).

#include "isem/semantics.hpp"
#include "isem/text.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace isem::expr {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Binary {
    OpKind op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Negate {
    ExprPtr operand;
};

struct Expr {
    std::variant<Literal, Binary, Negate> node;
};

bool operator==(const Expr& a, const Expr& b);

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t position, std::vector<std::string> expected, const std::string& found);

    std::size_t position() const { return position_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t position_;
    std::vector<std::string> expected_;
};

class SemanticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Expr parse(std::string_view text);

// Minimal parentheses; parse(to_string(e)) == e.
std::string to_string(const Expr& e);

// Debug form, e.g. "Add(Div(1, 3), Mul(2, inf))".
std::string to_tree_string(const Expr& e);

// Leaves are interpreted floats, inner nodes the interval operations; the
// intermediate results stay intervals. Literals that are not format values
// are rounded to nearest and reported in `warnings`.
ExtInterval eval(const Expr& e, const FloatFormat& f, ZeroMode mode, std::vector<std::string>* warnings = nullptr);

} // namespace isem::expr
