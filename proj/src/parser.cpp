#include "revham/parser.hpp"

#include <cctype>
#include <map>
#include <vector>

namespace revham {

namespace {

enum class Tok { integer, ident, plus, minus, star, caret, slash, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (digit(c)) {
            while (i < s.size() && digit(s[i])) {
                ++i;
            }
            if (i < s.size() && (s[i] == '.' || s[i] == 'e' || s[i] == 'E')) {
                throw ParseError("decimal literals are not accepted in exact mode", i);
            }
            if (i < s.size() && ident_start(s[i])) {
                throw ParseError("implicit multiplication is not supported", i);
            }
            out.push_back({Tok::integer, std::string(s.substr(start, i - start)), start});
            continue;
        }
        if (ident_start(c)) {
            while (i < s.size() && ident_char(s[i])) {
                ++i;
            }
            out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
            continue;
        }
        Tok k;
        switch (c) {
        case '+': k = Tok::plus; break;
        case '-': k = Tok::minus; break;
        case '*': k = Tok::star; break;
        case '^': k = Tok::caret; break;
        case '/': k = Tok::slash; break;
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        case '.': throw ParseError("decimal literals are not accepted in exact mode", i);
        default: throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({k, std::string(1, c), start});
        ++i;
    }
    out.push_back({Tok::end, "", s.size()});
    return out;
}

using Node = std::unique_ptr<ExprAst>;

Node make_binary(ExprAst::Kind kind, Node lhs, Node rhs)
{
    auto n = std::make_unique<ExprAst>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    Parser(std::string_view text, const VarNames& vars, std::size_t max_depth)
        : toks_(tokenize(text)), vars_(vars), max_depth_(max_depth)
    {
    }

    Node parse()
    {
        Node n = expr(0);
        if (peek().kind != Tok::end) {
            throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        }
        return n;
    }

private:
    const Token& peek() const { return toks_[cur_]; }
    const Token& next() { return toks_[cur_++]; }

    void enter(std::size_t depth) const
    {
        if (depth > max_depth_) {
            throw ParseError("expression nesting exceeds depth limit " + std::to_string(max_depth_), peek().pos);
        }
    }

    Node expr(std::size_t depth)
    {
        enter(depth);
        Node lhs = term(depth + 1);
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            auto kind = next().kind == Tok::plus ? ExprAst::Kind::sum : ExprAst::Kind::difference;
            lhs = make_binary(kind, std::move(lhs), term(depth + 1));
        }
        return lhs;
    }

    Node term(std::size_t depth)
    {
        enter(depth);
        Node lhs = factor(depth + 1);
        while (peek().kind == Tok::star) {
            next();
            lhs = make_binary(ExprAst::Kind::product, std::move(lhs), factor(depth + 1));
        }
        return lhs;
    }

    Node factor(std::size_t depth)
    {
        enter(depth);
        if (peek().kind == Tok::minus) {
            next();
            auto n = std::make_unique<ExprAst>();
            n->kind = ExprAst::Kind::negation;
            n->lhs = factor(depth + 1);
            return n;
        }
        return power(depth + 1);
    }

    Node power(std::size_t depth)
    {
        enter(depth);
        Node base = atom(depth + 1);
        if (peek().kind != Tok::caret) {
            return base;
        }
        next();
        const Token& e = peek();
        if (e.kind == Tok::minus) {
            throw ParseError("negative exponent", e.pos);
        }
        if (e.kind != Tok::integer) {
            throw ParseError("expected a nonnegative integer exponent", e.pos);
        }
        next();
        if (peek().kind == Tok::slash) {
            throw ParseError("fractional exponent", peek().pos);
        }
        if (e.text.size() > 6) {
            throw ParseError("exponent too large", e.pos);
        }
        auto n = std::make_unique<ExprAst>();
        n->kind = ExprAst::Kind::power;
        n->exponent = static_cast<unsigned>(std::stoul(e.text));
        n->lhs = std::move(base);
        return n;
    }

    Node atom(std::size_t depth)
    {
        enter(depth);
        const Token& t = next();
        switch (t.kind) {
        case Tok::integer: {
            auto n = std::make_unique<ExprAst>();
            n->kind = ExprAst::Kind::literal;
            std::string text = t.text;
            if (peek().kind == Tok::slash) {
                next();
                const Token& d = next();
                if (d.kind != Tok::integer) {
                    throw ParseError("expected an integer denominator", d.pos);
                }
                if (Integer(d.text) == 0) {
                    throw ParseError("zero denominator", d.pos);
                }
                text += "/" + d.text;
            }
            n->value = parse_rational(text);
            return n;
        }
        case Tok::ident: {
            auto n = std::make_unique<ExprAst>();
            n->kind = ExprAst::Kind::variable;
            if (t.text == vars_.first) {
                n->variable = Axis::first;
            } else if (t.text == vars_.second) {
                n->variable = Axis::second;
            } else {
                throw ParseError("unknown identifier '" + t.text + "'", t.pos);
            }
            return n;
        }
        case Tok::lparen: {
            Node inner = expr(depth + 1);
            if (peek().kind != Tok::rparen) {
                throw ParseError("expected ')'", peek().pos);
            }
            next();
            return inner;
        }
        case Tok::end: throw ParseError("unexpected end of input", t.pos);
        default: throw ParseError("unexpected '" + t.text + "'", t.pos);
        }
    }

    std::vector<Token> toks_;
    std::size_t cur_ = 0;
    const VarNames& vars_;
    std::size_t max_depth_;
};

// Exact sparse polynomial used for evaluation, keyed by exponent pair.
using Sparse = std::map<std::pair<int, int>, Rational>;

Sparse sparse_mul(const Sparse& a, const Sparse& b)
{
    Sparse r;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            auto& slot = r[{ea.first + eb.first, ea.second + eb.second}];
            slot += ca * cb;
        }
    }
    std::erase_if(r, [](const auto& kv) { return is_zero(kv.second); });
    return r;
}

Sparse evaluate(const ExprAst& n)
{
    using K = ExprAst::Kind;
    switch (n.kind) {
    case K::literal: {
        Sparse s;
        if (!is_zero(n.value)) {
            s[{0, 0}] = n.value;
        }
        return s;
    }
    case K::variable: return Sparse{{n.variable == Axis::first ? std::pair{1, 0} : std::pair{0, 1}, Rational(1)}};
    case K::negation: {
        Sparse s = evaluate(*n.lhs);
        for (auto& kv : s) {
            kv.second = -kv.second;
        }
        return s;
    }
    case K::sum:
    case K::difference: {
        Sparse a = evaluate(*n.lhs);
        Sparse b = evaluate(*n.rhs);
        for (const auto& [e, c] : b) {
            if (n.kind == K::sum) {
                a[e] += c;
            } else {
                a[e] -= c;
            }
        }
        std::erase_if(a, [](const auto& kv) { return is_zero(kv.second); });
        return a;
    }
    case K::product: return sparse_mul(evaluate(*n.lhs), evaluate(*n.rhs));
    case K::power: {
        Sparse base = evaluate(*n.lhs);
        Sparse result{{{0, 0}, Rational(1)}};
        unsigned e = n.exponent;
        while (e > 0) {
            if (e & 1U) {
                result = sparse_mul(result, base);
            }
            e >>= 1U;
            if (e > 0) {
                base = sparse_mul(base, base);
            }
        }
        return result;
    }
    }
    return {};
}

std::string monomial_text(int i, int j, const VarNames& vars)
{
    std::string s;
    auto put = [&](const std::string& name, int p) {
        if (p == 0) {
            return;
        }
        if (!s.empty()) {
            s += '*';
        }
        s += name;
        if (p > 1) {
            s += '^' + std::to_string(p);
        }
    };
    put(vars.first, i);
    put(vars.second, j);
    return s;
}

} // namespace

ExprAst parse_ast(std::string_view text, const VarNames& vars, std::size_t max_depth)
{
    if (vars.first == vars.second) {
        throw Error("variable names must be distinct");
    }
    Parser p(text, vars, max_depth);
    return std::move(*p.parse());
}

ParsedSeries parse_expression(std::string_view text, const VarNames& vars, int order, const ParseOptions& options)
{
    ExprAst ast = parse_ast(text, vars, options.max_depth);
    Sparse poly = evaluate(ast);
    ParsedSeries out{Series2<Rational>(order), false};
    for (const auto& [e, c] : poly) {
        if (e.first + e.second > order) {
            out.dropped_degree = true;
            continue;
        }
        out.series.set(e.first, e.second, c);
    }
    if (out.dropped_degree && options.strict_degree) {
        throw ParseError("expression has terms above truncation order " + std::to_string(order), 0);
    }
    return out;
}

Series2<Rational> parse(std::string_view text, const VarNames& vars, int order)
{
    return parse_expression(text, vars, order).series;
}

std::string unparse(const Series2<Rational>& s, const VarNames& vars)
{
    std::string out;
    s.for_each_term([&](int i, int j, const Rational& c) {
        bool negative = sgn(c) < 0;
        Rational mag = abs(c);
        std::string mono = monomial_text(i, j, vars);
        std::string body;
        if (mono.empty()) {
            body = to_string(mag);
        } else if (mag == 1) {
            body = mono;
        } else {
            body = to_string(mag) + "*" + mono;
        }
        if (out.empty()) {
            out = negative ? "-" + body : body;
        } else {
            out += negative ? " - " : " + ";
            out += body;
        }
    });
    return out.empty() ? "0" : out;
}

} // namespace revham
