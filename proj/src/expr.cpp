#include "isem/expr.hpp"

#include <cctype>

namespace isem::expr {

namespace {

enum class Tok { number, word, plus, minus, star, slash, lparen, rparen, end };

struct Token {
    Tok kind;
    std::size_t pos;
    std::string text;
};

std::string describe(const Token& t)
{
    return t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
}

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    Token next()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
        const std::size_t start = i_;
        if (i_ == s_.size())
            return {Tok::end, start, ""};
        const char ch = s_[i_];
        switch (ch) {
        case '+':
            return single(Tok::plus);
        case '-':
            return single(Tok::minus);
        case '*':
            return single(Tok::star);
        case '/':
            return single(Tok::slash);
        case '(':
            return single(Tok::lparen);
        case ')':
            return single(Tok::rparen);
        default:
            break;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_])))
                ++i_;
            return {Tok::word, start, std::string(s_.substr(start, i_ - start))};
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.')
            return number(start);
        throw SyntaxError(start, {"number", "'('", "'-'"}, std::string(1, ch));
    }

private:
    Token single(Tok k)
    {
        const std::size_t start = i_++;
        return {k, start, std::string(1, s_[start])};
    }

    Token number(std::size_t start)
    {
        const bool hex = s_.substr(i_, 2) == "0x" || s_.substr(i_, 2) == "0X";
        if (hex)
            i_ += 2;
        const char exp_char = hex ? 'p' : 'e';
        auto digit = [&](char c) {
            return hex ? std::isxdigit(static_cast<unsigned char>(c)) != 0 : std::isdigit(static_cast<unsigned char>(c)) != 0;
        };
        while (i_ < s_.size() && (digit(s_[i_]) || s_[i_] == '.'))
            ++i_;
        if (i_ < s_.size() && std::tolower(static_cast<unsigned char>(s_[i_])) == exp_char) {
            ++i_;
            if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-'))
                ++i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                ++i_;
        }
        return {Tok::number, start, std::string(s_.substr(start, i_ - start))};
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view s) : lexer_(s) { advance(); }

    Expr parse_all()
    {
        Expr e = expression();
        if (tok_.kind != Tok::end)
            throw SyntaxError(tok_.pos, {"'+'", "'-'", "'*'", "'/'", "end of input"}, describe(tok_));
        return e;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    Expr expression()
    {
        Expr lhs = term();
        while (tok_.kind == Tok::plus || tok_.kind == Tok::minus) {
            const OpKind op = tok_.kind == Tok::plus ? OpKind::add : OpKind::sub;
            advance();
            lhs = binary(op, std::move(lhs), term());
        }
        return lhs;
    }

    Expr term()
    {
        Expr lhs = unary();
        while (tok_.kind == Tok::star || tok_.kind == Tok::slash) {
            const OpKind op = tok_.kind == Tok::star ? OpKind::mul : OpKind::div;
            advance();
            lhs = binary(op, std::move(lhs), unary());
        }
        return lhs;
    }

    Expr unary()
    {
        if (tok_.kind != Tok::plus && tok_.kind != Tok::minus)
            return primary();
        const bool minus = tok_.kind == Tok::minus;
        advance();
        Expr operand = unary();
        if (!minus)
            return operand;
        if (auto* lit = std::get_if<Literal>(&operand.node)) {
            if (lit->kind != Literal::Kind::nan)
                lit->negative = !lit->negative;
            return operand;
        }
        return Expr{Negate{std::make_unique<Expr>(std::move(operand))}};
    }

    Expr primary()
    {
        const Token t = tok_;
        switch (t.kind) {
        case Tok::number:
            advance();
            try {
                return Expr{parse_literal(t.text)};
            } catch (const ParseError& e) {
                throw SyntaxError(t.pos, {"number"}, describe(t));
            }
        case Tok::word: {
            std::string w = t.text;
            for (char& c : w)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (w != "inf" && w != "infinity" && w != "nan")
                throw SyntaxError(t.pos, {"number", "'inf'", "'nan'", "'('"}, describe(t));
            advance();
            return Expr{parse_literal(w)};
        }
        case Tok::lparen: {
            advance();
            Expr inner = expression();
            if (tok_.kind != Tok::rparen)
                throw SyntaxError(tok_.pos, {"')'"}, describe(tok_));
            advance();
            return inner;
        }
        default:
            throw SyntaxError(t.pos, {"number", "'inf'", "'nan'", "'('", "'-'"}, describe(t));
        }
    }

    static Expr binary(OpKind op, Expr lhs, Expr rhs)
    {
        return Expr{Binary{op, std::make_unique<Expr>(std::move(lhs)), std::make_unique<Expr>(std::move(rhs))}};
    }

    Lexer lexer_;
    Token tok_{Tok::end, 0, ""};
};

int precedence(const Expr& e)
{
    if (const auto* b = std::get_if<Binary>(&e.node))
        return (b->op == OpKind::add || b->op == OpKind::sub) ? 1 : 2;
    return 3;
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0)
            out += i + 1 == items.size() ? " or " : ", ";
        out += items[i];
    }
    return out;
}

} // namespace

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected, const std::string& found)
    : std::runtime_error("syntax error at position " + std::to_string(position) + ": expected " + join(expected)
                         + ", found " + found),
      position_(position), expected_(std::move(expected))
{
}

bool operator==(const Expr& a, const Expr& b)
{
    if (a.node.index() != b.node.index())
        return false;
    if (const auto* la = std::get_if<Literal>(&a.node))
        return *la == std::get<Literal>(b.node);
    if (const auto* na = std::get_if<Negate>(&a.node))
        return *na->operand == *std::get<Negate>(b.node).operand;
    const auto& ba = std::get<Binary>(a.node);
    const auto& bb = std::get<Binary>(b.node);
    return ba.op == bb.op && *ba.lhs == *bb.lhs && *ba.rhs == *bb.rhs;
}

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const Expr& e)
{
    if (const auto* lit = std::get_if<Literal>(&e.node))
        return to_string(*lit);
    if (const auto* n = std::get_if<Negate>(&e.node))
        return "-(" + to_string(*n->operand) + ")";
    const auto& b = std::get<Binary>(e.node);
    const int p = precedence(e);
    std::string lhs = to_string(*b.lhs);
    std::string rhs = to_string(*b.rhs);
    if (precedence(*b.lhs) < p)
        lhs = "(" + lhs + ")";
    if (precedence(*b.rhs) <= p)
        rhs = "(" + rhs + ")";
    return lhs + ' ' + op_symbol(b.op) + ' ' + rhs;
}

std::string to_tree_string(const Expr& e)
{
    if (const auto* lit = std::get_if<Literal>(&e.node)) {
        if (lit->kind == Literal::Kind::number && sgn(lit->value) == 0)
            return lit->negative ? "-0" : "+0";
        return to_string(*lit);
    }
    if (const auto* n = std::get_if<Negate>(&e.node))
        return "Neg(" + to_tree_string(*n->operand) + ")";
    const auto& b = std::get<Binary>(e.node);
    static constexpr const char* names[] = {"Add", "Sub", "Mul", "Div"};
    return std::string(names[static_cast<int>(b.op)]) + "(" + to_tree_string(*b.lhs) + ", "
        + to_tree_string(*b.rhs) + ")";
}

ExtInterval eval(const Expr& e, const FloatFormat& f, ZeroMode mode, std::vector<std::string>* warnings)
{
    if (const auto* lit = std::get_if<Literal>(&e.node)) {
        if (lit->kind == Literal::Kind::nan && mode == ZeroMode::finite_precision)
            throw SemanticError("nan has no interval meaning under finite-precision zeros");
        bool inexact = false;
        const Fp x = to_fp(*lit, f, &inexact);
        if (inexact && warnings)
            warnings->push_back("literal " + to_string(*lit) + " is not a " + to_string(f) + " value; rounded to "
                                + to_string(x));
        return interpret(x, mode);
    }
    if (const auto* n = std::get_if<Negate>(&e.node))
        return iv_neg(eval(*n->operand, f, mode, warnings));
    const auto& b = std::get<Binary>(e.node);
    const ExtInterval lhs = eval(*b.lhs, f, mode, warnings);
    const ExtInterval rhs = eval(*b.rhs, f, mode, warnings);
    return iv_apply(b.op, lhs, rhs);
}

} // namespace isem::expr
