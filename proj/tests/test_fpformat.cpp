#include "doctest.h"

#include "isem/fpformat.hpp"
#include "isem/text.hpp"
#include "support/brute_format.hpp"

#include <bit>
#include <random>

using namespace isem;

namespace {

const FloatFormat toy{3, -2, 3, true};
const FloatFormat toy_ns{3, -2, 3, false};
const FloatFormat tiny{2, 0, 0, false};

brute::Format as_brute(const FloatFormat& f) { return {f.precision, f.e_min, f.e_max, f.subnormals}; }

Fp fp(const char* text, const FloatFormat& f = toy)
{
    bool inexact = false;
    Fp x = to_fp(parse_literal(text), f, &inexact);
    REQUIRE_FALSE(inexact);
    return x;
}

Rational q(long n, long d = 1) { return Rational(n, d); }

// Rationals probing a format: every value, midpoints, near-neighbours,
// thirds, and points beyond M.
std::vector<Rational> probes(const FloatFormat& f)
{
    const auto values = brute::finite_values(as_brute(f));
    std::vector<Rational> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.push_back(values[i].value);
        if (i + 1 < values.size()) {
            const Rational a = values[i].value, b = values[i + 1].value;
            out.push_back((a + b) / 2);
            out.push_back(a + (b - a) / 3);
            out.push_back(b - (b - a) / 1000);
        }
    }
    const Rational big = values.back().value;
    for (const Rational& extra : std::vector<Rational>{big * 2, big + big / 1000, big * 1000, pow2(f.e_max + 1) - pow2(f.e_max - f.precision)}) {
        out.push_back(extra);
        out.push_back(-extra);
    }
    return out;
}

void check_against_brute(const Fp& got, const brute::Rounded& want, bool negative_side)
{
    if (want.value) {
        REQUIRE(got.is_finite());
        CHECK(to_rational(got) == *want.value);
    } else {
        REQUIRE(got.is_inf());
        CHECK(got.negative() == !want.positive_infinity);
        (void)negative_side;
    }
}

} // namespace

TEST_CASE("max_finite matches enumeration")
{
    // Frozen from brute::positives: largest toy value is 1.11b * 2^3.
    CHECK(to_rational(max_finite(toy)) == 14);
    CHECK(brute::positives(as_brute(toy)).back().value == 14);

    CHECK(to_rational(max_finite(tiny)) == q(3, 2));
    CHECK(brute::positives(as_brute(tiny)).back().value == q(3, 2));

    CHECK(std::bit_cast<std::uint64_t>(to_double(max_finite(FloatFormat::binary64()))) == 0x7FEFFFFFFFFFFFFFULL);
}

TEST_CASE("min_pos matches enumeration")
{
    CHECK(to_rational(min_pos(toy)) == q(1, 16));
    CHECK(brute::positives(as_brute(toy)).front().value == q(1, 16));
    CHECK(to_rational(min_pos(toy_ns)) == q(1, 4));
    CHECK(brute::positives(as_brute(toy_ns)).front().value == q(1, 4));

    const Fp m64 = min_pos(FloatFormat::binary64());
    CHECK(to_rational(m64) == pow2(-1074));
    CHECK(m64 == from_double(std::bit_cast<double>(std::uint64_t{1})));
}

TEST_CASE("next_up and next_down")
{
    CHECK(next_up(fp("14")).is_pos_inf());
    CHECK(next_up(Fp::zero(toy)) == fp("0.0625"));
    CHECK(next_up(Fp::zero(toy, true)) == fp("0.0625"));
    CHECK(next_up(fp("0.25")) == fp("0.3125"));
    CHECK(next_up(Fp::infinity(toy, true)) == fp("-14"));

    CHECK(next_down(fp("-14")).is_neg_inf());
    CHECK(next_down(fp("0.375")) == fp("0.3125"));
    CHECK(next_down(next_up(fp("1"))) == fp("1"));
    CHECK(next_down(Fp::zero(toy)) == fp("-0.0625"));
    CHECK(next_up(fp("-0.0625")) == Fp::zero(toy, true));

    // Without subnormals the gap below the smallest normal is empty.
    CHECK(next_down(fp("0.25", toy_ns)).is_zero());
    CHECK(next_up(Fp::zero(toy_ns)) == fp("0.25", toy_ns));

    CHECK_THROWS_AS(next_up(Fp::infinity(toy)), std::domain_error);
    CHECK_THROWS_AS(next_up(Fp::nan(toy)), std::domain_error);
    CHECK_THROWS_AS(next_down(Fp::infinity(toy, true)), std::domain_error);
    CHECK_THROWS_AS(next_down(Fp::nan(toy)), std::domain_error);
}

TEST_CASE("round examples")
{
    CHECK(round(q(1, 3), RoundingDirection::toward_pos_inf, toy) == fp("0.375"));
    CHECK(round(q(1, 3), RoundingDirection::toward_neg_inf, toy) == fp("0.3125"));
    CHECK(round(q(32), RoundingDirection::toward_neg_inf, toy) == fp("14"));
    CHECK(round(q(32), RoundingDirection::toward_pos_inf, toy).is_pos_inf());
    CHECK(round(q(32), RoundingDirection::toward_zero, toy) == fp("14"));
    CHECK(round(q(32), RoundingDirection::nearest, toy).is_pos_inf());
    CHECK(round(q(-32), RoundingDirection::toward_pos_inf, toy) == fp("-14"));

    // The 1/3 oracle: the two bracketing values of the toy format.
    const auto values = brute::finite_values(as_brute(toy));
    CHECK(*brute::round_up(q(1, 3), values).value == q(3, 8));
    CHECK(*brute::round_down(q(1, 3), values).value == q(5, 16));
}

TEST_CASE("round zero signs")
{
    CHECK(round(q(0), RoundingDirection::nearest, toy) == Fp::zero(toy));
    CHECK(round(q(0), RoundingDirection::toward_neg_inf, toy) == Fp::zero(toy));
    CHECK(round(q(1, 1000), RoundingDirection::toward_zero, toy) == Fp::zero(toy));
    CHECK(round(q(-1, 1000), RoundingDirection::toward_zero, toy) == Fp::zero(toy, true));
    CHECK(round(q(-1, 1000), RoundingDirection::toward_pos_inf, toy) == Fp::zero(toy, true));
    CHECK(round(q(-1, 1000), RoundingDirection::toward_neg_inf, toy) == fp("-0.0625"));
}

TEST_CASE("to_rational")
{
    CHECK(to_rational(fp("0.0625")) == q(1, 16));
    CHECK(to_rational(Fp::zero(toy, true)) == 0);
    CHECK(to_rational(fp("14")) == 14);
    CHECK_THROWS_AS(to_rational(Fp::infinity(toy)), std::domain_error);
    CHECK_THROWS_AS(to_rational(Fp::nan(toy)), std::domain_error);
}

TEST_CASE("enumerate")
{
    const std::vector<Fp> t = enumerate(tiny);
    const std::vector<std::string> want{"-inf", "-1.5", "-1", "-0", "+0", "1", "1.5", "+inf"};
    REQUIRE(t.size() == want.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        CHECK(to_string(t[i]) == want[i]);

    // 2 * (6 binades * 4 + 3 subnormals) + 2 zeros + 2 infinities.
    const std::vector<Fp> all = enumerate(toy);
    CHECK(all.size() == 58);
    CHECK(toy.value_count() == 58);
    CHECK(all.size() == 2 * brute::positives(as_brute(toy)).size() + 4);

    for (std::size_t i = 0; i + 1 < all.size(); ++i) {
        if (all[i].is_zero() && all[i + 1].is_zero())
            continue; // -0, +0 are equal in value
        CHECK(next_up(all[i]) == all[i + 1]);
        CHECK(compare(all[i], all[i + 1]) < 0);
    }
    CHECK_THROWS_AS(enumerate(FloatFormat::binary64()), EnumerationRefused);
    CHECK_FALSE(FloatFormat::binary64().enumerable());
    CHECK(FloatFormat{12, -20, 20, true}.enumerable());
}

TEST_CASE("canonical encoding is enforced")
{
    CHECK_THROWS_AS(Fp::finite(toy, false, 2, toy.min_quantum() + 1), std::invalid_argument);
    CHECK_THROWS_AS(Fp::finite(toy_ns, false, 2, toy.min_quantum()), std::invalid_argument);
    CHECK_THROWS_AS(Fp::finite(toy, false, 8, 0), std::invalid_argument);
    CHECK_THROWS_AS(Fp::finite(toy, false, 4, toy.max_quantum() + 1), std::invalid_argument);
    CHECK_THROWS_AS((FloatFormat{1, 0, 0, true}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((FloatFormat{3, 2, 1, true}.validate()), std::invalid_argument);
}

TEST_CASE("round agrees with the brute-force reference on small formats")
{
    for (const FloatFormat& f : {toy, toy_ns, tiny, FloatFormat{4, -3, 3, true}, FloatFormat{5, -1, 2, false}}) {
        CAPTURE(to_string(f));
        const auto values = brute::finite_values(as_brute(f));
        for (const Rational& x : probes(f)) {
            CAPTURE(x.get_str());
            check_against_brute(round(x, RoundingDirection::toward_pos_inf, f), brute::round_up(x, values), false);
            check_against_brute(round(x, RoundingDirection::toward_neg_inf, f), brute::round_down(x, values), true);
            check_against_brute(round(x, RoundingDirection::nearest, f), brute::round_nearest(x, as_brute(f), values),
                                false);
            const auto tz = sgn(x) >= 0 ? brute::round_down(x, values) : brute::round_up(x, values);
            const Fp got = round(x, RoundingDirection::toward_zero, f);
            REQUIRE(got.is_finite());
            if (tz.value)
                CHECK(to_rational(got) == *tz.value);
            else
                CHECK(to_rational(got) == (sgn(x) > 0 ? 1 : -1) * to_rational(max_finite(f)));
        }
    }
}

TEST_CASE("rounding properties on small formats")
{
    for (const FloatFormat& f : {toy, toy_ns, FloatFormat{4, -3, 3, true}}) {
        CAPTURE(to_string(f));
        const std::vector<Fp> all = enumerate(f);
        for (const Fp& x : all) {
            if (!x.is_finite())
                continue;
            for (auto d : {RoundingDirection::toward_neg_inf, RoundingDirection::toward_pos_inf,
                           RoundingDirection::toward_zero, RoundingDirection::nearest})
                CHECK(same_value(round(to_rational(x), d, f), x));
            if (!x.is_inf() && !x.is_zero()) {
                CHECK(same_value(next_down(next_up(x)), x));
                CHECK(same_value(next_up(next_down(x)), x));
            }
        }
        const std::vector<Rational> ps = probes(f);
        for (const Rational& x : ps) {
            const Fp down = round(x, RoundingDirection::toward_neg_inf, f);
            const Fp up = round(x, RoundingDirection::toward_pos_inf, f);
            if (down.is_finite())
                CHECK(to_rational(down) <= x);
            if (up.is_finite())
                CHECK(x <= to_rational(up));
            if (!same_value(down, up))
                CHECK(same_value(next_up(down), up));
            CHECK(same_value(round(Rational(-x), RoundingDirection::toward_neg_inf, f), -up));
        }
        for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
            const Rational& a = std::min(ps[i], ps[i + 1]);
            const Rational& b = std::max(ps[i], ps[i + 1]);
            for (auto d : {RoundingDirection::toward_neg_inf, RoundingDirection::toward_pos_inf,
                           RoundingDirection::toward_zero, RoundingDirection::nearest})
                CHECK(compare(round(a, d, f), round(b, d, f)) <= 0);
        }
    }
}

TEST_CASE("binary64 rounding agrees with the host")
{
    const FloatFormat b64 = FloatFormat::binary64();
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20000; ++i) {
        const double a = std::bit_cast<double>(rng());
        const double b = std::bit_cast<double>(rng());
        if (!std::isfinite(a) || !std::isfinite(b))
            continue;
        const Fp fa = from_double(a);
        CHECK(to_double(fa) == a);
        CHECK(round(to_rational(fa), RoundingDirection::nearest, b64) == fa);
        const double sum = a + b;
        if (sum != 0)
            CHECK(round(to_rational(fa) + to_rational(from_double(b)), RoundingDirection::nearest, b64)
                  == from_double(sum));
    }
}

TEST_CASE("format descriptors and value text")
{
    CHECK(parse_format("b64") == FloatFormat::binary64());
    CHECK(parse_format("p3e-2:3") == toy);
    CHECK(parse_format("p3e-2:3ns") == toy_ns);
    CHECK(to_string(toy_ns) == "p3e-2:3ns");
    CHECK(to_string(FloatFormat::binary64()) == "b64");
    CHECK_THROWS_AS(parse_format("p1e0:0"), ParseError);
    CHECK_THROWS_AS(parse_format("q3e0:1"), ParseError);

    CHECK(to_string(fp("3")) == "3");
    CHECK(to_hex_string(fp("3")) == "0x1.8p+1");
    CHECK(to_hex_string(fp("0.0625")) == "0x1p-4");
    CHECK(to_string(Fp::zero(toy, true)) == "-0");
    CHECK(to_string(Fp::infinity(toy, true)) == "-inf");
    CHECK(to_string(Fp::nan(toy)) == "nan");
    CHECK(to_string(from_double(0.1)) == "0x1.999999999999ap-4");
    CHECK(to_string(min_pos(FloatFormat::binary64())) == "0x1p-1074");
    CHECK(to_string(from_double(-2.5)) == "-2.5");

    CHECK(parse_literal("0x1.8p+1").value == 3);
    CHECK(parse_literal("1e-3").value == Rational(1, 1000));
    CHECK(parse_literal("-0").negative);
    CHECK(parse_literal("-inf").kind == Literal::Kind::infinity);
    CHECK_THROWS_AS(parse_literal("1.2.3"), ParseError);
    CHECK_THROWS_AS(parse_literal("abc"), ParseError);

    bool inexact = false;
    CHECK(to_fp(parse_literal("0.1"), toy, &inexact) == fp("0.125"));
    CHECK(inexact);
}
