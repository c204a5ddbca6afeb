#include "doctest.h"

#include "isem/expr.hpp"

#include <random>

using namespace isem;
using namespace isem::expr;

namespace {

const FloatFormat toy{3, -2, 3, true};

std::string tree(const char* text) { return to_tree_string(parse(text)); }

std::string ev(const char* text, ZeroMode mode = ZeroMode::finite_precision, const FloatFormat& f = toy)
{
    return to_string(eval(parse(text), f, mode));
}

std::size_t error_at(const char* text)
{
    try {
        parse(text);
    } catch (const SyntaxError& e) {
        return e.position();
    }
    FAIL("no syntax error for " << text);
    return 0;
}

// Random well-formed expression text.
std::string random_expr(std::mt19937& rng, int depth)
{
    static const char* leaves[] = {"1", "0.5", "-0", "+0", "inf", "-inf", "3", "0x1p-4", "nan", "14", "2.5"};
    static const char* ops[] = {" + ", " - ", " * ", " / "};
    if (depth == 0 || rng() % 3 == 0)
        return leaves[rng() % std::size(leaves)];
    std::string lhs = random_expr(rng, depth - 1), rhs = random_expr(rng, depth - 1);
    std::string s = lhs + ops[rng() % 4] + rhs;
    switch (rng() % 3) {
    case 0:
        return "(" + s + ")";
    case 1:
        return "-(" + s + ")";
    default:
        return s;
    }
}

} // namespace

TEST_CASE("parse trees")
{
    CHECK(tree("1/3 + 2*inf") == "Add(Div(1, 3), Mul(2, inf))");
    CHECK(tree("(-0)/(+0)") == "Div(-0, +0)");
    CHECK(tree("-0/+0") == "Div(-0, +0)");
    CHECK(tree("1 - 2 - 3") == "Sub(Sub(1, 2), 3)");
    CHECK(tree("1 / 2 / 3") == "Div(Div(1, 2), 3)");
    CHECK(tree("1 - -2") == "Sub(1, -2)");
    CHECK(tree("-(1 + 2)") == "Neg(Add(1, 2))");
    CHECK(tree("--1") == "1");
    CHECK(tree("Infinity * NaN") == "Mul(inf, nan)");
    CHECK(tree("0x1.8p1") == "3");
    CHECK(tree("2.5e-1") == "0.25");
}

TEST_CASE("printing with minimal parentheses")
{
    CHECK(to_string(parse("(1 + 2) * 3")) == "(1 + 2) * 3");
    CHECK(to_string(parse("1 + (2 * 3)")) == "1 + 2 * 3");
    CHECK(to_string(parse("1 - (2 - 3)")) == "1 - (2 - 3)");
    CHECK(to_string(parse("(1 - 2) - 3")) == "1 - 2 - 3");
    CHECK(to_string(parse("1 / (2 * 3)")) == "1 / (2 * 3)");
}

TEST_CASE("printing round-trips")
{
    std::mt19937 rng(42);
    for (int i = 0; i < 500; ++i) {
        const std::string text = random_expr(rng, 4);
        CAPTURE(text);
        const Expr e = parse(text);
        CHECK(parse(to_string(e)) == e);
    }
}

TEST_CASE("syntax errors carry a position")
{
    CHECK(error_at("1 +") == 3);
    CHECK(error_at("(1 + 2") == 6);
    CHECK(error_at("1 2") == 2);
    CHECK(error_at("1 $ 2") == 2);
    CHECK(error_at("foo") == 0);
    CHECK(error_at("") == 0);
    CHECK(error_at("1 + )") == 4);
    CHECK(error_at("1.2.3") == 0);
    try {
        parse("1 +");
    } catch (const SyntaxError& e) {
        CHECK(std::string(e.what()).find("syntax error at position 3: expected") == 0);
        CHECK(std::string(e.what()).find("found end of input") != std::string::npos);
    }
}

TEST_CASE("evaluation under finite-precision zeros")
{
    CHECK(ev("1/0") == "[14, +inf)");
    CHECK(ev("1/-0") == "(-inf, -14]");
    CHECK(ev("0/0") == "(-inf, +inf)");
    CHECK(ev("inf - inf") == "(-inf, +inf)");
    CHECK(ev("0.5 * inf") == "[7, +inf)");
    CHECK(ev("-2 + inf") == "[12, +inf)");
    CHECK(ev("0 + 0") == "[0, 0.125]");
    CHECK(ev("1/3") == "[0.3125, 0.375]");
    CHECK(ev("(1/3) * 3") == "[0.875, 1.25]");
    CHECK(ev("-(1/3)") == "[-0.375, -0.3125]");
    CHECK_THROWS_AS(ev("nan + 1"), SemanticError);
}

TEST_CASE("evaluation under infinite-precision zeros")
{
    constexpr ZeroMode inf = ZeroMode::infinite_precision;
    CHECK(ev("1/0", inf) == "empty");
    CHECK(ev("0/0", inf) == "(-inf, +inf)");
    CHECK(ev("0 * inf", inf) == "[0, 0]");
    CHECK(ev("nan + 1", inf) == "empty");
    CHECK(ev("(1/0) * 0", inf) == "empty");
    CHECK(ev("0 + -0", inf) == "[0, 0]");
}

TEST_CASE("evaluation on binary64")
{
    const FloatFormat b64 = FloatFormat::binary64();
    CHECK(ev("1/3", ZeroMode::finite_precision, b64) == "[0x1.5555555555555p-2, 0x1.5555555555556p-2]");
    CHECK(ev("1/0", ZeroMode::finite_precision, b64) == "[0x1.fffffffffffffp+1023, +inf)");
    CHECK(ev("2 + 3", ZeroMode::finite_precision, b64) == "[5, 5]");
}

TEST_CASE("inexact literals are reported")
{
    std::vector<std::string> warnings;
    const ExtInterval r = eval(parse("0.1 + 1"), toy, ZeroMode::finite_precision, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("0.1") != std::string::npos);
    CHECK(warnings[0].find("0.125") != std::string::npos);
    CHECK(to_string(r) == "[1, 1.25]");
    warnings.clear();
    eval(parse("1 + 2"), toy, ZeroMode::finite_precision, &warnings);
    CHECK(warnings.empty());
}
