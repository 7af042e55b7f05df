#include "finsler/expression.hpp"

#include <cctype>
#include <cstdlib>
#include <map>

namespace finsler {

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    int dim;
    bool allow_y;
    bool allow_r;

    using Node = Expr::Node;
    using Op = Expr::Op;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("expression", what + " at offset " + std::to_string(pos) + " in '" + s + "'");
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    static std::unique_ptr<Node> node(Op op, std::unique_ptr<Node> a = nullptr,
                                      std::unique_ptr<Node> b = nullptr) {
        auto n = std::make_unique<Node>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    std::unique_ptr<Node> parse_expr() {
        auto lhs = parse_term();
        for (;;) {
            if (eat('+')) lhs = node(Op::Add, std::move(lhs), parse_term());
            else if (eat('-')) lhs = node(Op::Sub, std::move(lhs), parse_term());
            else return lhs;
        }
    }

    std::unique_ptr<Node> parse_term() {
        auto lhs = parse_factor();
        for (;;) {
            if (eat('*')) lhs = node(Op::Mul, std::move(lhs), parse_factor());
            else if (eat('/')) lhs = node(Op::Div, std::move(lhs), parse_factor());
            else return lhs;
        }
    }

    std::unique_ptr<Node> parse_factor() {
        auto base = parse_unary();
        if (eat('^')) return node(Op::Pow, std::move(base), parse_factor());  // right assoc
        return base;
    }

    std::unique_ptr<Node> parse_unary() {
        if (eat('-')) return node(Op::Neg, parse_unary());
        eat('+');
        return parse_primary();
    }

    std::unique_ptr<Node> parse_primary() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of expression");
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (c == '(') {
            ++pos;
            auto e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        fail(std::string("unexpected character '") + c + "'");
    }

    std::unique_ptr<Node> parse_number() {
        size_t end;
        double v;
        try {
            v = std::stod(s.substr(pos), &end);
        } catch (const std::exception&) {
            fail("bad number");
        }
        pos += end;
        auto n = node(Op::Const);
        n->cst = v;
        return n;
    }

    std::unique_ptr<Node> parse_ident() {
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        std::string id = s.substr(start, pos - start);

        static const std::map<std::string, Op> funcs = {
            {"sqrt", Op::Sqrt}, {"sin", Op::Sin},   {"cos", Op::Cos}, {"sinh", Op::Sinh},
            {"cosh", Op::Cosh}, {"exp", Op::Exp},   {"log", Op::Log}};
        if (auto it = funcs.find(id); it != funcs.end()) {
            if (!eat('(')) fail("expected '(' after " + id);
            auto arg = parse_expr();
            if (!eat(')')) fail("expected ')' after " + id + " argument");
            return node(it->second, std::move(arg));
        }
        if (id == "pi") {
            auto n = node(Op::Const);
            n->cst = 3.14159265358979323846;
            return n;
        }
        if (id == "x" || id == "y") {
            if (id == "y" && !allow_y) fail("y[] not allowed in this context");
            if (!eat('[')) fail("expected '[' after " + id);
            skip_ws();
            size_t end;
            long idx;
            try {
                idx = std::stol(s.substr(pos), &end);
            } catch (const std::exception&) {
                fail("bad index");
            }
            pos += end;
            if (!eat(']')) fail("expected ']'");
            if (idx < 0 || idx >= dim)
                fail(id + "[" + std::to_string(idx) + "] out of range for dim " +
                     std::to_string(dim));
            auto n = node(id == "x" ? Op::VarX : Op::VarY);
            n->index = static_cast<int>(idx);
            return n;
        }
        if (id == "r" && allow_r) {
            auto n = node(Op::VarX);
            n->index = 0;
            return n;
        }
        fail("unknown identifier '" + id + "'");
    }
};

}  // namespace

Expr Expr::parse(const std::string& src, int dim, bool allow_y, bool allow_r) {
    Parser p{src, 0, dim, allow_y, allow_r};
    auto root = p.parse_expr();
    p.skip_ws();
    if (p.pos != src.size()) p.fail("trailing input");
    Expr e;
    e.root_ = std::shared_ptr<const Node>(root.release());
    e.src_ = src;
    e.dim_ = dim;
    return e;
}

}  // namespace finsler
