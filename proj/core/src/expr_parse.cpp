#include <cctype>
#include <memory>

#include "htseq/expr.hpp"

namespace htseq {

namespace {

// Raw parse tree; Pi is kept symbolic until trig arguments are analyzed.
struct Raw;
using RawPtr = std::shared_ptr<const Raw>;

enum class RawKind { Num, Pi, Var, Add, Sub, Mul, Div, Neg, Pow, Factorial, Call };

struct Raw {
    RawKind kind;
    Rational num;                 // Num
    std::vector<RawPtr> children; // Add/Sub/Mul/Div (2), Neg/Factorial (1), Call args, Pow base
    std::string name;             // Call
    // Pow exponent: either an integer literal, bare n, or a parenthesized
    // affine expression, kept raw.
    RawPtr exponent;
    std::size_t pos = 0;          // byte offset for errors
};

RawPtr raw(Raw r) { return std::make_shared<const Raw>(std::move(r)); }

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

    RawPtr parse_expr() {
        char c = peek();
        bool neg = false;
        while (c == '+' || c == '-') {
            if (c == '-') neg = !neg;
            ++pos;
            c = peek();
        }
        RawPtr acc = parse_term();
        if (neg) acc = raw({RawKind::Neg, {}, {acc}, "", nullptr, acc->pos});
        while (true) {
            c = peek();
            if (c == '+' || c == '-') {
                std::size_t p = pos;
                ++pos;
                RawPtr t = parse_term();
                acc = raw({c == '+' ? RawKind::Add : RawKind::Sub, {}, {acc, t}, "", nullptr, p});
            } else {
                break;
            }
        }
        return acc;
    }

    RawPtr parse_term() {
        RawPtr acc = parse_factor();
        while (true) {
            char c = peek();
            if (c == '*' || c == '/') {
                std::size_t p = pos;
                ++pos;
                RawPtr f = parse_factor();
                acc = raw({c == '*' ? RawKind::Mul : RawKind::Div, {}, {acc, f}, "", nullptr, p});
            } else {
                break;
            }
        }
        return acc;
    }

    RawPtr parse_factor() {
        RawPtr base = parse_base();
        if (peek() == '^') {
            std::size_t p = pos;
            ++pos;
            RawPtr expo = parse_exponent();
            return raw({RawKind::Pow, {}, {base}, "", expo, p});
        }
        return base;
    }

    RawPtr parse_exponent() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '-')) {
            bool neg = s[pos] == '-';
            if (neg) ++pos;
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                fail("expected integer exponent");
            std::size_t d0 = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            Rational v(Integer(s.substr(d0, pos - d0), 10));
            if (neg) v = -v;
            return raw({RawKind::Num, v, {}, "", nullptr, start});
        }
        if (pos < s.size() && s[pos] == 'n' &&
            (pos + 1 >= s.size() || !std::isalnum(static_cast<unsigned char>(s[pos + 1])))) {
            ++pos;
            return raw({RawKind::Var, {}, {}, "", nullptr, start});
        }
        if (eat('(')) {
            RawPtr e = parse_expr();
            if (!eat(')')) fail("expected ')' closing exponent");
            return e;
        }
        fail("expected an integer, n, or a parenthesized affine exponent");
    }

    RawPtr parse_base() {
        skip_ws();
        std::size_t start = pos;
        if (pos >= s.size()) fail("unexpected end of input");
        RawPtr b;
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t d0 = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            b = raw({RawKind::Num, Rational(Integer(s.substr(d0, pos - d0), 10)), {}, "", nullptr, start});
        } else if (c == '(') {
            ++pos;
            b = parse_expr();
            if (!eat(')')) fail("expected ')'");
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t d0 = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(d0, pos - d0);
            if (name == "n") {
                b = raw({RawKind::Var, {}, {}, "", nullptr, start});
            } else if (name == "Pi" || name == "pi") {
                b = raw({RawKind::Pi, {}, {}, "", nullptr, start});
            } else if (name == "sin" || name == "cos" || name == "tan" || name == "binomial" ||
                       name == "chi") {
                if (!eat('(')) fail("expected '(' after " + name);
                std::vector<RawPtr> args;
                args.push_back(parse_expr());
                while (eat(',')) args.push_back(parse_expr());
                if (!eat(')')) fail("expected ')' closing " + name + "(...)");
                b = raw({RawKind::Call, {}, std::move(args), name, nullptr, start});
            } else {
                pos = start;
                fail("unknown identifier '" + name + "'");
            }
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
        // postfix factorials
        while (peek() == '!') {
            std::size_t p = pos;
            ++pos;
            b = raw({RawKind::Factorial, {}, {b}, "", nullptr, p});
        }
        return b;
    }
};

// --- conversion helpers ---

bool contains_pi(const RawPtr& r) {
    if (r->kind == RawKind::Pi) return true;
    if (r->kind == RawKind::Call) return false;  // inner trig owns its Pi
    for (const auto& ch : r->children)
        if (contains_pi(ch)) return true;
    if (r->exponent && contains_pi(r->exponent)) return true;
    return false;
}

// arg == pi * X exactly (linearly); returns X.
std::optional<RawPtr> divide_out_pi(const RawPtr& r) {
    switch (r->kind) {
        case RawKind::Pi:
            return raw({RawKind::Num, Rational(1), {}, "", nullptr, r->pos});
        case RawKind::Neg: {
            auto inner = divide_out_pi(r->children[0]);
            if (!inner) return std::nullopt;
            return raw({RawKind::Neg, {}, {*inner}, "", nullptr, r->pos});
        }
        case RawKind::Add:
        case RawKind::Sub: {
            auto a = divide_out_pi(r->children[0]);
            auto b = divide_out_pi(r->children[1]);
            if (!a || !b) return std::nullopt;
            return raw({r->kind, {}, {*a, *b}, "", nullptr, r->pos});
        }
        case RawKind::Mul: {
            if (!contains_pi(r->children[0]) && contains_pi(r->children[1])) {
                auto b = divide_out_pi(r->children[1]);
                if (!b) return std::nullopt;
                return raw({RawKind::Mul, {}, {r->children[0], *b}, "", nullptr, r->pos});
            }
            if (contains_pi(r->children[0]) && !contains_pi(r->children[1])) {
                auto a = divide_out_pi(r->children[0]);
                if (!a) return std::nullopt;
                return raw({RawKind::Mul, {}, {*a, r->children[1]}, "", nullptr, r->pos});
            }
            return std::nullopt;
        }
        case RawKind::Div: {
            if (contains_pi(r->children[1])) return std::nullopt;
            auto a = divide_out_pi(r->children[0]);
            if (!a) return std::nullopt;
            return raw({RawKind::Div, {}, {*a, r->children[1]}, "", nullptr, r->pos});
        }
        default:
            return std::nullopt;
    }
}

std::optional<Rational> const_of(const RawPtr& r) {
    switch (r->kind) {
        case RawKind::Num:
            return r->num;
        case RawKind::Neg: {
            auto v = const_of(r->children[0]);
            if (!v) return std::nullopt;
            return -*v;
        }
        case RawKind::Add:
        case RawKind::Sub: {
            auto a = const_of(r->children[0]), b = const_of(r->children[1]);
            if (!a || !b) return std::nullopt;
            return r->kind == RawKind::Add ? Rational(*a + *b) : Rational(*a - *b);
        }
        case RawKind::Mul: {
            auto a = const_of(r->children[0]), b = const_of(r->children[1]);
            if (!a || !b) return std::nullopt;
            return *a * *b;
        }
        case RawKind::Div: {
            auto a = const_of(r->children[0]), b = const_of(r->children[1]);
            if (!a || !b || *b == 0) return std::nullopt;
            return *a / *b;
        }
        case RawKind::Pow: {
            auto a = const_of(r->children[0]);
            auto e = const_of(r->exponent);
            if (!a || !e || !is_integer(*e)) return std::nullopt;
            return rat_pow(*a, to_long(to_integer(*e)));
        }
        default:
            return std::nullopt;
    }
}

std::optional<Affine> affine_of(const RawPtr& r) {
    switch (r->kind) {
        case RawKind::Num:
            return Affine{Rational(0), r->num};
        case RawKind::Var:
            return Affine{Rational(1), Rational(0)};
        case RawKind::Neg: {
            auto a = affine_of(r->children[0]);
            if (!a) return std::nullopt;
            return Affine{-a->slope, -a->intercept};
        }
        case RawKind::Add:
        case RawKind::Sub: {
            auto a = affine_of(r->children[0]), b = affine_of(r->children[1]);
            if (!a || !b) return std::nullopt;
            if (r->kind == RawKind::Add) return Affine{a->slope + b->slope, a->intercept + b->intercept};
            return Affine{a->slope - b->slope, a->intercept - b->intercept};
        }
        case RawKind::Mul: {
            auto ca = const_of(r->children[0]);
            if (ca) {
                auto b = affine_of(r->children[1]);
                if (!b) return std::nullopt;
                return Affine{*ca * b->slope, *ca * b->intercept};
            }
            auto cb = const_of(r->children[1]);
            if (!cb) return std::nullopt;
            auto a = affine_of(r->children[0]);
            if (!a) return std::nullopt;
            return Affine{a->slope * *cb, a->intercept * *cb};
        }
        case RawKind::Div: {
            auto cb = const_of(r->children[1]);
            if (!cb || *cb == 0) return std::nullopt;
            auto a = affine_of(r->children[0]);
            if (!a) return std::nullopt;
            return Affine{a->slope / *cb, a->intercept / *cb};
        }
        default:
            return std::nullopt;
    }
}

ExprPtr convert(const RawPtr& r);

ExprPtr convert_trig(const RawPtr& call) {
    TrigKind kind = call->name == "sin"   ? TrigKind::Sin
                    : call->name == "cos" ? TrigKind::Cos
                                          : TrigKind::Tan;
    if (call->children.size() != 1)
        throw ParseError(call->name + " takes exactly one argument", call->pos);
    const RawPtr& arg = call->children[0];
    if (!contains_pi(arg)) {
        auto c = const_of(arg);
        if (c && *c == 0) return make_trig(kind, Affine{Rational(0), Rational(0)});
        throw ParseError("trig argument must be a rational multiple of Pi (or a periodic expression times Pi)",
                         arg->pos);
    }
    auto over_pi = divide_out_pi(arg);
    if (!over_pi)
        throw ParseError("trig argument is not linear in Pi", arg->pos);
    if (auto aff = affine_of(*over_pi)) return make_trig(kind, *aff);
    // nested: inner expression times pi
    ExprPtr inner = convert(*over_pi);
    if (needs_normal_form_path(inner))
        throw ParseError("nested trig argument may not contain indicator terms", arg->pos);
    if (!period_bound(inner))
        throw ParseError("nested trig argument must be a periodic expression", arg->pos);
    return make_trig_nested(kind, std::move(inner));
}

ExprPtr convert(const RawPtr& r) {
    switch (r->kind) {
        case RawKind::Num:
            return make_const(CycloNumber(r->num));
        case RawKind::Pi:
            throw ParseError("Pi is only allowed inside trigonometric arguments", r->pos);
        case RawKind::Var:
            return make_var();
        case RawKind::Neg:
            return make_mul({make_const(CycloNumber(Rational(-1))), convert(r->children[0])});
        case RawKind::Add:
            return make_add({convert(r->children[0]), convert(r->children[1])});
        case RawKind::Sub:
            return make_add({convert(r->children[0]),
                             make_mul({make_const(CycloNumber(Rational(-1))), convert(r->children[1])})});
        case RawKind::Mul:
            return make_mul({convert(r->children[0]), convert(r->children[1])});
        case RawKind::Div:
            return make_div(convert(r->children[0]), convert(r->children[1]));
        case RawKind::Factorial: {
            auto aff = affine_of(r->children[0]);
            if (!aff)
                throw ParseError("factorial argument must be affine in n", r->pos);
            try {
                return make_factorial(*aff);
            } catch (const DomainError& e) {
                throw ParseError(e.what(), r->pos);
            }
        }
        case RawKind::Pow: {
            auto e_aff = affine_of(r->exponent);
            if (!e_aff) throw ParseError("exponent must be an integer or affine in n", r->pos);
            if (e_aff->slope == 0) {
                if (!is_integer(e_aff->intercept))
                    throw ParseError("constant exponent must be an integer", r->pos);
                return make_pow_int(convert(r->children[0]), to_long(to_integer(e_aff->intercept)));
            }
            ExprPtr base = convert(r->children[0]);
            if (base->kind != ExprKind::Const)
                throw ParseError("an exponent containing n requires a constant base", r->pos);
            try {
                return make_geometric(base->value, *e_aff);
            } catch (const DomainError& e) {
                throw ParseError(e.what(), r->pos);
            }
        }
        case RawKind::Call: {
            if (r->name == "sin" || r->name == "cos" || r->name == "tan") return convert_trig(r);
            if (r->name == "binomial") {
                if (r->children.size() != 2)
                    throw ParseError("binomial takes exactly two arguments", r->pos);
                auto a = affine_of(r->children[0]);
                auto b = affine_of(r->children[1]);
                if (!a || !b)
                    throw ParseError("binomial arguments must be affine in n", r->pos);
                try {
                    return make_binomial(*a, *b);
                } catch (const DomainError& e) {
                    throw ParseError(e.what(), r->pos);
                }
            }
            // chi(m, j)
            if (r->children.size() != 2) throw ParseError("chi takes exactly two arguments", r->pos);
            auto m = const_of(r->children[0]);
            auto j = const_of(r->children[1]);
            if (!m || !j || !is_integer(*m) || !is_integer(*j))
                throw ParseError("chi arguments must be integers", r->pos);
            try {
                return make_indicator(make_indicator(to_long(to_integer(*m)), to_long(to_integer(*j))));
            } catch (const DomainError& e) {
                throw ParseError(e.what(), r->pos);
            }
        }
    }
    throw ParseError("unreachable raw node", r->pos);
}

}  // namespace

ExprPtr parse(const std::string& input) {
    Parser p{input};
    RawPtr r = p.parse_expr();
    p.skip_ws();
    if (p.pos != input.size()) throw ParseError("trailing input", p.pos);
    return convert(r);
}

}  // namespace htseq
