// isem: evaluate expressions under interval semantics for floating-point
// operations, and run the verification suites.

#include "isem/catalog.hpp"
#include "isem/expr.hpp"
#include "isem/harness.hpp"
#include "isem/oracle.hpp"
#include "isem/roundflag.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <unistd.h>

using namespace isem;

namespace {

constexpr int usage_exit = 2;

struct Settings {
    std::string format = "b64";
    std::string mode = "finite";
    std::uint64_t seed = kDefaultSeed;
};

ZeroMode parse_mode(const std::string& s)
{
    if (s == "finite")
        return ZeroMode::finite_precision;
    if (s == "infinite")
        return ZeroMode::infinite_precision;
    throw ParseError("unknown zero mode '" + s + "' (expected finite or infinite)");
}

std::string format_check(const std::string& s)
{
    try {
        parse_format(s);
        return {};
    } catch (const std::exception& e) {
        return e.what();
    }
}

// Prints the interval, or the requested float bounds of it.
void print_result(const ExtInterval& r, const std::string& round)
{
    if (round.empty())
        std::cout << to_string(r) << '\n';
    else if (round == "down")
        std::cout << to_string(lower_bound(r)) << '\n';
    else if (round == "up")
        std::cout << to_string(upper_bound(r)) << '\n';
    else
        std::cout << to_string(lower_bound(r)) << ' ' << to_string(upper_bound(r)) << '\n';
}

int run_eval(const std::string& text, const FloatFormat& f, ZeroMode mode, const std::string& round, bool tree)
{
    try {
        const expr::Expr e = expr::parse(text);
        if (tree)
            std::cout << expr::to_tree_string(e) << '\n';
        std::vector<std::string> warnings;
        const ExtInterval r = expr::eval(e, f, mode, &warnings);
        for (const std::string& w : warnings)
            std::cerr << "warning: " << w << '\n';
        print_result(r, round);
        return 0;
    } catch (const expr::SyntaxError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const expr::SemanticError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return 1;
}

int run_check(const FloatFormat& f, ZeroMode mode, const SampleSpec& spec)
{
    bool ok = true;
    std::cout << "format " << to_string(f) << ", " << to_string(mode) << "-precision zeros\n";
    if (f.enumerable()) {
        const auto mismatches = oracle::exhaustive_compare(f, mode);
        std::cout << "oracle: " << mismatches.size() << " mismatches over every operand pair\n";
        for (std::size_t i = 0; i < mismatches.size() && i < 10; ++i)
            std::cout << "  " << oracle::to_string(mismatches[i]) << '\n';
        ok = ok && mismatches.empty();
    } else {
        std::cout << "oracle: skipped, format too large to enumerate\n";
    }
    const std::pair<const char*, std::vector<OpKind>> suites[] = {
        {"bounds for + - *", {OpKind::add, OpKind::sub, OpKind::mul}},
        {"bounds for /", {OpKind::div}},
    };
    for (const auto& [name, ops] : suites) {
        const TheoremSummary s = run_theorem_suite(f, mode, ops, spec);
        std::cout << name << ": " << s.cases << " cases, " << s.mismatches << " mismatches\n";
        for (const DiffCase& c : s.counterexamples)
            std::cout << "  " << to_string(c) << '\n';
        ok = ok && s.passed();
    }
    std::cout << (ok ? "ok" : "FAILED") << '\n';
    return ok ? 0 : 1;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

void emit_table(const std::vector<std::vector<std::string>>& rows, bool csv)
{
    if (csv) {
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                std::cout << (i ? "," : "") << csv_field(row[i]);
            std::cout << '\n';
        }
        return;
    }
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) {
            width.resize(std::max(width.size(), row.size()));
            width[i] = std::max(width[i], row[i].size());
        }
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size())
                line += std::string(width[i] - row[i].size() + 2, ' ');
        }
        std::cout << line << '\n';
    }
}

int run_report(const FloatFormat& f, bool csv)
{
    std::vector<std::vector<std::string>> identities{
        {"identity", "group", "pattern", "zeros", "stated", "checked", "holds"}};
    for (const IdentityRecord& r : identity_catalog()) {
        std::uint64_t n = 0, good = 0;
        for (const Fp& a : sample_operands(r.lhs, f))
            for (const Fp& b : sample_operands(r.rhs, f)) {
                ++n;
                good += fp_interval_op(a, b, r.op, r.mode) == r.expected(a, b);
            }
        std::string holds = good == n ? "yes" : "no";
        if (!r.dispute.empty())
            holds += " (" + r.dispute + ")";
        identities.push_back({r.name, to_string(r.group), r.pattern(), to_string(r.mode), r.expected_text,
                              std::to_string(good) + "/" + std::to_string(n), holds});
    }
    if (!csv)
        std::cout << "identities on " << to_string(f) << "\n\n";
    emit_table(identities, csv);

    std::vector<std::vector<std::string>> rows{
        {"identity", "a", "op", "b", "zeros", "interval", "ieee down", "ieee up", "class", "stated", "agrees"}};
    for (ZeroMode mode : {ZeroMode::finite_precision, ZeroMode::infinite_precision})
        for (const DeviationRow& row : deviation_report(f, mode))
            rows.push_back({row.identity, to_string(row.lhs), std::string(1, op_symbol(row.op)), to_string(row.rhs),
                            to_string(row.mode), to_string(row.interval), to_string(row.ieee_down),
                            to_string(row.ieee_up), to_string(row.classification),
                            row.claim ? to_string(*row.claim) : "-", row.agrees_with_claim() ? "yes" : "no"});
    std::cout << '\n';
    if (!csv)
        std::cout << "conformance with IEEE 754 directed rounding\n\n";
    emit_table(rows, csv);
    return 0;
}

// Magnitude with `r` bits after the point.
std::string binary_text(const Rational& magnitude, std::size_t r)
{
    const mpz_class scaled = mpz_class(magnitude * pow2(static_cast<long>(r)));
    std::string digits = scaled.get_str(2);
    if (digits.size() <= r)
        digits.insert(0, r + 1 - digits.size(), '0');
    digits.insert(digits.size() - r, ".");
    return digits;
}

int run_flagdemo(const std::string& text)
{
    PreRoundedWord w = [&] {
        try {
            return PreRoundedWord::parse(text);
        } catch (const std::exception& e) {
            throw CLI::ValidationError("bitstring", e.what());
        }
    }();
    const std::size_t r = w.r();
    const RoundFlag flag = compute_flag(w);
    const FlaggedRound fr = apply_flagged_round(w);
    const Rational ulp = pow2(-static_cast<long>(r));
    const Rational truncated = Rational(mpz_class(w.magnitude() / ulp)) * ulp;
    const std::string sign = w.negative() ? "-" : "";
    std::cout << "word      " << to_string(w) << '\n';
    std::cout << "b_r       " << w.bit(r) << '\n';
    std::cout << "b_r+1     " << w.bit(r + 1) << '\n';
    std::cout << "R-up      " << round_up_table(w.bit(r), w.bit(r + 1)) << '\n';
    std::cout << "flag      " << to_string(flag) << '\n';
    std::cout << "rounded   " << sign << kept_to_string(fr) << '\n';
    Rational lo = truncated, hi = flag == RoundFlag::exact ? truncated : truncated + ulp;
    if (w.negative()) {
        std::swap(lo, hi);
        std::cout << "down      -" << binary_text(lo, r) << "\nup        -" << binary_text(hi, r) << '\n';
    } else {
        std::cout << "down      " << binary_text(lo, r) << "\nup        " << binary_text(hi, r) << '\n';
    }
    return 0;
}

int run_repl(FloatFormat f, ZeroMode mode)
{
    const bool tty = isatty(STDIN_FILENO) != 0;
    std::string line;
    int status = 0;
    while (true) {
        if (tty)
            std::cout << "isem> " << std::flush;
        if (!std::getline(std::cin, line))
            break;
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#')
            continue;
        line = line.substr(start);
        if (line[0] != ':') {
            status |= run_eval(line, f, mode, "", false);
            continue;
        }
        std::istringstream in(line.substr(1));
        std::string cmd, arg;
        in >> cmd >> arg;
        try {
            if (cmd == "quit" || cmd == "q")
                break;
            if (cmd == "format" && !arg.empty())
                f = parse_format(arg);
            else if (cmd == "mode" && !arg.empty())
                mode = parse_mode(arg);
            else if (cmd == "show")
                std::cout << "format " << to_string(f) << ", " << to_string(mode) << "-precision zeros\n";
            else
                std::cerr << "error: commands are :format F, :mode finite|infinite, :show, :quit\n";
        } catch (const ParseError& e) {
            std::cerr << "error: " << e.what() << '\n';
            status = 1;
        }
    }
    return status;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Interval semantics for floating-point operations"};
    app.set_config("--config", "", "Read defaults (format, mode, seed) from a key=value file");
    app.config_formatter(std::make_shared<CLI::ConfigINI>());
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    app.add_option("--format", s.format, "Float format: b64, b32 or pPeMIN:MAX with optional ns suffix")
        ->check([](const std::string& v) { return format_check(v); })
        ->capture_default_str();
    app.add_option("--mode", s.mode, "Zero interpretation")
        ->check(CLI::IsMember({"finite", "infinite"}))
        ->capture_default_str();
    app.add_option("--seed", s.seed, "Random seed for sampled suites")->capture_default_str();

    std::string text, round, bits;
    bool tree = false, csv = false;
    std::uint64_t samples = SampleSpec{}.samples;

    auto* eval = app.add_subcommand("eval", "Evaluate an expression");
    eval->add_option("expr", text, "Expression, e.g. \"1/0 + 2*inf\"")->required();
    eval->add_option("--round", round, "Print float bounds instead of the interval")
        ->check(CLI::IsMember({"up", "down", "both"}));
    eval->add_flag("--tree", tree, "Also print the parse tree");

    auto* check = app.add_subcommand("check", "Run the oracle comparison and the bound suites");
    check->add_option("--samples", samples, "Random pairs per operation for formats too large to enumerate")
        ->capture_default_str();

    auto* report = app.add_subcommand("report", "Identity and conformance tables");
    report->add_flag("--csv", csv, "Machine-readable output");

    auto* flagdemo = app.add_subcommand("flagdemo", "Show the rounding flag for a pre-rounded word like 1.011|01");
    flagdemo->add_option("bitstring", bits, "Kept and discarded bits separated by |")->required();

    auto* repl = app.add_subcommand("repl", "Read expressions line by line from standard input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : usage_exit;
    }

    try {
        const FloatFormat f = parse_format(s.format);
        const ZeroMode mode = parse_mode(s.mode);
        if (*eval)
            return run_eval(text, f, mode, round, tree);
        if (*check)
            return run_check(f, mode, SampleSpec{samples, s.seed});
        if (*report)
            return run_report(f, csv);
        if (*flagdemo)
            return run_flagdemo(bits);
        if (*repl)
            return run_repl(f, mode);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage_exit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return usage_exit;
}
