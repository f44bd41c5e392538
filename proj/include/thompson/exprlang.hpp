#pragma once

// The element expression language used by the CLI and tests.
//
//   expr   := factor ('*' factor)*            left-to-right action order
//   factor := atom ('^' suffix)?              ^integer is power,
//   suffix := signed-integer | atom           ^atom is conjugation h^-1 g h
//   atom   := ident | literal | '(' expr ')'
//
// Literals: pl{(x,y),...}, circ{(x,y),...}, rot(d), transplant(expr,[lo,hi]).
// Built-in identifiers: x0, x1, b, id.

#include "thompson/catalog.hpp"
#include "thompson/element.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace thompson {

struct SyntaxError : std::runtime_error {
    std::size_t position;

    SyntaxError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExprNode;

class Expr {
public:
    explicit Expr(ExprNode n);

    const ExprNode& node() const { return *node_; }

private:
    std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
    struct Ident {
        std::string name;
    };
    struct Compose {
        Expr lhs, rhs;
    };
    struct Power {
        Expr base;
        long exponent;
    };
    struct Conjugation {
        Expr base, by;
    };
    struct Literal {
        Element value;
    };
    struct Rotation {
        Rational amount;
    };
    struct Transplanted {
        Expr inner;
        ClosedInterval target;
    };

    std::variant<Ident, Compose, Power, Conjugation, Literal, Rotation, Transplanted> value;
};

inline Expr::Expr(ExprNode n) : node_(std::make_shared<const ExprNode>(std::move(n))) {}

using Env = std::map<std::string, Element, std::less<>>;

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw SyntaxError("unexpected trailing input", pos_);
        return e;
    }

private:
    Expr parse_expr() {
        Expr lhs = parse_factor();
        for (;;) {
            skip_ws();
            if (!consume('*'))
                return lhs;
            Expr rhs = parse_factor();
            lhs = Expr(ExprNode{ExprNode::Compose{std::move(lhs), std::move(rhs)}});
        }
    }

    Expr parse_factor() {
        Expr base = parse_atom();
        skip_ws();
        if (!consume('^'))
            return base;
        skip_ws();
        if (pos_ < text_.size() &&
            (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-' ||
             text_[pos_] == '+'))
            return Expr(ExprNode{ExprNode::Power{std::move(base), parse_integer()}});
        Expr by = parse_atom();
        return Expr(ExprNode{ExprNode::Conjugation{std::move(base), std::move(by)}});
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size())
            throw SyntaxError("expected an element expression", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word = parse_word();
            if (word == "pl" || word == "circ")
                return parse_table_literal(word == "circ");
            if (word == "rot") {
                expect('(');
                Rational d = parse_rational_token();
                expect(')');
                return Expr(ExprNode{ExprNode::Rotation{std::move(d)}});
            }
            if (word == "transplant") {
                expect('(');
                Expr inner = parse_expr();
                expect(',');
                ClosedInterval target = parse_interval_literal();
                expect(')');
                return Expr(ExprNode{ExprNode::Transplanted{std::move(inner), std::move(target)}});
            }
            return Expr(ExprNode{ExprNode::Ident{std::move(word)}});
        }
        throw SyntaxError("expected an element expression", pos_);
    }

    Expr parse_table_literal(bool circle) {
        expect('{');
        std::vector<BreakPoint> pts;
        for (;;) {
            expect('(');
            Rational x = parse_rational_token();
            expect(',');
            Rational y = parse_rational_token();
            expect(')');
            pts.push_back({std::move(x), std::move(y)});
            skip_ws();
            if (consume(','))
                continue;
            expect('}');
            break;
        }
        std::size_t at = pos_;
        try {
            if (circle)
                return Expr(ExprNode{ExprNode::Literal{CircleMap(std::move(pts))}});
            return Expr(ExprNode{ExprNode::Literal{PLMap(std::move(pts))}});
        } catch (const std::invalid_argument& e) {
            throw SyntaxError(e.what(), at);
        }
    }

    ClosedInterval parse_interval_literal() {
        expect('[');
        Rational lo = parse_rational_token();
        expect(',');
        Rational hi = parse_rational_token();
        expect(']');
        return {std::move(lo), std::move(hi)};
    }

    std::string parse_word() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    long parse_integer() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            neg = text_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw SyntaxError("expected an integer", start);
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        return neg ? -value : value;
    }

    Rational parse_rational_token() {
        long p = parse_integer();
        skip_ws();
        if (!consume('/'))
            return Rational(p);
        std::size_t at = pos_;
        long q = parse_integer();
        if (q == 0)
            throw SyntaxError("zero denominator", at);
        return make_rational(Int(p), Int(q));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (!consume(c))
            throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view text) { return detail::ExprParser(text).parse_all(); }

inline Element eval(const Expr& e, const Env& env = {});

namespace detail {

struct Evaluator {
    const Env& env;

    Element operator()(const ExprNode::Ident& n) const {
        if (auto it = env.find(n.name); it != env.end())
            return it->second;
        if (n.name == "x0")
            return standard_x0();
        if (n.name == "x1")
            return standard_x1();
        if (n.name == "b")
            return standard_b();
        if (n.name == "id")
            return PLMap();
        throw EvalError("unbound identifier '" + n.name + "'");
    }
    Element operator()(const ExprNode::Compose& n) const {
        return compose(eval(n.lhs, env), eval(n.rhs, env));
    }
    Element operator()(const ExprNode::Power& n) const { return power(eval(n.base, env), n.exponent); }
    Element operator()(const ExprNode::Conjugation& n) const {
        return conjugate(eval(n.base, env), eval(n.by, env));
    }
    Element operator()(const ExprNode::Literal& n) const { return n.value; }
    Element operator()(const ExprNode::Rotation& n) const { return rotation(n.amount); }
    Element operator()(const ExprNode::Transplanted& n) const {
        Element inner = eval(n.inner, env);
        return transplant(as_interval(inner), n.target);
    }
};

}  // namespace detail

inline Element eval(const Expr& e, const Env& env) {
    return std::visit(detail::Evaluator{env}, e.node().value);
}

// Canonical literal; parse(format(g)) evaluates back to g exactly.
inline std::string format(const Element& e) {
    const bool circle = carrier_of(e) == Carrier::circle;
    const auto& pts = circle ? std::get<CircleMap>(e).lift() : std::get<PLMap>(e).points();
    std::string out = circle ? "circ{" : "pl{";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i)
            out += ',';
        out += '(' + to_string(pts[i].x) + ',' + to_string(pts[i].y) + ')';
    }
    out += '}';
    return out;
}

}  // namespace thompson
