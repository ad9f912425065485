#include "htseq/expr.hpp"

#include <algorithm>
#include <sstream>

namespace htseq {

std::string Affine::str() const {
    std::ostringstream os;
    if (slope != 0) {
        if (slope == 1)
            os << "n";
        else if (slope == -1)
            os << "-n";
        else
            os << rat_str(slope) << "*n";
        if (intercept > 0)
            os << "+" << rat_str(intercept);
        else if (intercept < 0)
            os << rat_str(intercept);
    } else {
        os << rat_str(intercept);
    }
    return os.str();
}

namespace {
ExprPtr node(SeqExpr e) { return std::make_shared<const SeqExpr>(std::move(e)); }
}  // namespace

ExprPtr make_const(CycloNumber v) {
    SeqExpr e{};
    e.kind = ExprKind::Const;
    e.value = std::move(v);
    return node(std::move(e));
}

ExprPtr make_var() {
    SeqExpr e{};
    e.kind = ExprKind::Var;
    return node(std::move(e));
}

ExprPtr make_add(std::vector<ExprPtr> children) {
    // flatten, fold constants
    std::vector<ExprPtr> flat;
    CycloNumber c(0);
    for (auto& ch : children) {
        if (ch->kind == ExprKind::Add) {
            for (const auto& g : ch->children) {
                if (g->kind == ExprKind::Const)
                    c += g->value;
                else
                    flat.push_back(g);
            }
        } else if (ch->kind == ExprKind::Const) {
            c += ch->value;
        } else {
            flat.push_back(std::move(ch));
        }
    }
    if (!c.is_zero() || flat.empty()) flat.push_back(make_const(c));
    if (flat.size() == 1) return flat[0];
    SeqExpr e{};
    e.kind = ExprKind::Add;
    e.children = std::move(flat);
    return node(std::move(e));
}

ExprPtr make_mul(std::vector<ExprPtr> children) {
    std::vector<ExprPtr> flat;
    CycloNumber c(1);
    for (auto& ch : children) {
        if (ch->kind == ExprKind::Mul) {
            for (const auto& g : ch->children) {
                if (g->kind == ExprKind::Const)
                    c *= g->value;
                else
                    flat.push_back(g);
            }
        } else if (ch->kind == ExprKind::Const) {
            c *= ch->value;
        } else {
            flat.push_back(std::move(ch));
        }
    }
    if (c.is_zero()) return make_const(CycloNumber(0));
    if (!c.is_one() || flat.empty()) flat.insert(flat.begin(), make_const(c));
    if (flat.size() == 1) return flat[0];
    SeqExpr e{};
    e.kind = ExprKind::Mul;
    e.children = std::move(flat);
    return node(std::move(e));
}

ExprPtr make_div(ExprPtr num, ExprPtr den) {
    if (num->kind == ExprKind::Const && den->kind == ExprKind::Const) {
        if (den->value.is_zero()) throw DomainError("constant division by zero");
        return make_const(num->value / den->value);
    }
    if (den->kind == ExprKind::Const) {
        if (den->value.is_zero()) throw DomainError("constant division by zero");
        return make_mul({make_const(CycloNumber(1) / den->value), std::move(num)});
    }
    SeqExpr e{};
    e.kind = ExprKind::Div;
    e.children = {std::move(num), std::move(den)};
    return node(std::move(e));
}

ExprPtr make_pow_int(ExprPtr base, long e) {
    if (e == 1) return base;
    if (base->kind == ExprKind::Const) {
        if (base->value.is_zero() && e < 0) throw DomainError("0 to a negative power");
        return make_const(base->value.is_zero() && e == 0 ? CycloNumber(1) : base->value.pow(e));
    }
    if (e == 0) return make_const(CycloNumber(1));
    SeqExpr x{};
    x.kind = ExprKind::PowInt;
    x.children = {std::move(base)};
    x.ipow = e;
    return node(std::move(x));
}

ExprPtr make_geometric(CycloNumber base, Affine exponent) {
    if (base.is_zero()) throw DomainError("geometric power with base 0");
    if (exponent.slope == 0) {
        if (!is_integer(exponent.intercept))
            throw DomainError("constant with a non-integer rational exponent is not cyclotomic here");
        return make_const(base.pow(to_long(to_integer(exponent.intercept))));
    }
    SeqExpr e{};
    e.kind = ExprKind::GeometricPow;
    e.geo_base = std::move(base);
    e.affine = std::move(exponent);
    return node(std::move(e));
}

ExprPtr make_factorial(Affine arg) {
    if (!arg.is_integral())
        throw DomainError("factorial argument must have integer slope and intercept: (" + arg.str() + ")!");
    if (arg.slope == 0) {
        Integer v = to_integer(arg.intercept);
        if (v < 0) throw DomainError("factorial of the negative constant " + v.get_str());
        return make_const(Rational(factorial(to_long(v))));
    }
    SeqExpr e{};
    e.kind = ExprKind::Factorial;
    e.affine = std::move(arg);
    return node(std::move(e));
}

ExprPtr make_binomial(Affine top, Affine bottom) {
    if (!top.is_integral() || !bottom.is_integral())
        throw DomainError("binomial arguments must have integer slope and intercept");
    if (top.slope == 0 && bottom.slope == 0)
        return make_const(Rational(binomial_int(to_integer(top.intercept), to_integer(bottom.intercept))));
    SeqExpr e{};
    e.kind = ExprKind::Binomial;
    e.affine = std::move(top);
    e.affine2 = std::move(bottom);
    return node(std::move(e));
}

ExprPtr make_trig(TrigKind kind, Affine arg_over_pi) {
    SeqExpr e{};
    e.kind = ExprKind::Trig;
    e.trig = kind;
    e.affine = std::move(arg_over_pi);
    return node(std::move(e));
}

ExprPtr make_trig_nested(TrigKind kind, ExprPtr inner_over_pi) {
    SeqExpr e{};
    e.kind = ExprKind::Trig;
    e.trig = kind;
    e.trig_inner = std::move(inner_over_pi);
    return node(std::move(e));
}

ExprPtr make_indicator(IndicatorTerm t) {
    SeqExpr e{};
    e.kind = ExprKind::Indicator;
    e.chi = t;
    return node(std::move(e));
}

// --- printing ---

namespace {

std::string const_str(const CycloNumber& v) {
    if (auto q = v.as_rational()) {
        if (*q >= 0 && is_integer(*q)) return rat_str(*q);
        return "(" + rat_str(*q) + ")";
    }
    return "(" + v.str() + ")";
}

int precedence(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Add:
            return 1;
        case ExprKind::Mul:
        case ExprKind::Div:
            return 2;
        case ExprKind::PowInt:
        case ExprKind::GeometricPow:
            return 3;
        default:
            return 4;
    }
}

std::string print_at(const ExprPtr& e, int parent_prec) {
    std::string s;
    switch (e->kind) {
        case ExprKind::Const:
            s = const_str(e->value);
            break;
        case ExprKind::Var:
            s = "n";
            break;
        case ExprKind::Add: {
            std::ostringstream os;
            for (std::size_t i = 0; i < e->children.size(); ++i) {
                if (i) os << " + ";
                os << print_at(e->children[i], 1);
            }
            s = os.str();
            break;
        }
        case ExprKind::Mul: {
            std::ostringstream os;
            for (std::size_t i = 0; i < e->children.size(); ++i) {
                if (i) os << "*";
                os << print_at(e->children[i], 2);
            }
            s = os.str();
            break;
        }
        case ExprKind::Div:
            s = print_at(e->children[0], 2) + "/" + print_at(e->children[1], 3);
            break;
        case ExprKind::PowInt:
            s = print_at(e->children[0], 4) + "^" +
                (e->ipow < 0 ? "(" + std::to_string(e->ipow) + ")" : std::to_string(e->ipow));
            break;
        case ExprKind::GeometricPow: {
            std::string expo = (e->affine.slope == 1 && e->affine.intercept == 0)
                                   ? "n"
                                   : "(" + e->affine.str() + ")";
            s = const_str(e->geo_base) + "^" + expo;
            break;
        }
        case ExprKind::Factorial:
            s = "(" + e->affine.str() + ")!";
            break;
        case ExprKind::Binomial:
            s = "binomial(" + e->affine.str() + ", " + e->affine2.str() + ")";
            break;
        case ExprKind::Trig: {
            const char* name = e->trig == TrigKind::Sin ? "sin" : e->trig == TrigKind::Cos ? "cos" : "tan";
            std::string arg;
            if (e->trig_inner)
                arg = print_at(e->trig_inner, 2) + "*Pi";
            else if (e->affine.slope == 0 && e->affine.intercept == 0)
                arg = "0";
            else
                arg = "(" + e->affine.str() + ")*Pi";
            s = std::string(name) + "(" + arg + ")";
            break;
        }
        case ExprKind::Indicator:
            s = "chi(" + std::to_string(e->chi.m) + ", " + std::to_string(e->chi.j) + ")";
            break;
    }
    if (precedence(e) < parent_prec && e->kind != ExprKind::Const) s = "(" + s + ")";
    return s;
}

}  // namespace

std::string print(const ExprPtr& e) { return print_at(e, 0); }

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::Const:
            return a->value == b->value;
        case ExprKind::Var:
            return true;
        case ExprKind::Add:
        case ExprKind::Mul:
        case ExprKind::Div: {
            if (a->children.size() != b->children.size()) return false;
            for (std::size_t i = 0; i < a->children.size(); ++i)
                if (!expr_equal(a->children[i], b->children[i])) return false;
            return true;
        }
        case ExprKind::PowInt:
            return a->ipow == b->ipow && expr_equal(a->children[0], b->children[0]);
        case ExprKind::GeometricPow:
            return a->geo_base == b->geo_base && a->affine.slope == b->affine.slope &&
                   a->affine.intercept == b->affine.intercept;
        case ExprKind::Factorial:
            return a->affine.slope == b->affine.slope && a->affine.intercept == b->affine.intercept;
        case ExprKind::Binomial:
            return a->affine.slope == b->affine.slope && a->affine.intercept == b->affine.intercept &&
                   a->affine2.slope == b->affine2.slope && a->affine2.intercept == b->affine2.intercept;
        case ExprKind::Trig: {
            if (a->trig != b->trig) return false;
            if (static_cast<bool>(a->trig_inner) != static_cast<bool>(b->trig_inner)) return false;
            if (a->trig_inner) return expr_equal(a->trig_inner, b->trig_inner);
            return a->affine.slope == b->affine.slope && a->affine.intercept == b->affine.intercept;
        }
        case ExprKind::Indicator:
            return a->chi == b->chi;
    }
    return false;
}

// --- evaluation ---

CycloNumber eval_at(const ExprPtr& e, long n) {
    switch (e->kind) {
        case ExprKind::Const:
            return e->value;
        case ExprKind::Var:
            return CycloNumber(Rational(n));
        case ExprKind::Add: {
            CycloNumber acc(0);
            for (const auto& ch : e->children) acc += eval_at(ch, n);
            return acc;
        }
        case ExprKind::Mul: {
            CycloNumber acc(1);
            for (const auto& ch : e->children) acc *= eval_at(ch, n);
            return acc;
        }
        case ExprKind::Div: {
            CycloNumber den = eval_at(e->children[1], n);
            if (den.is_zero())
                throw UndefinedValueError("division by zero in " + print(e), n);
            return eval_at(e->children[0], n) / den;
        }
        case ExprKind::PowInt: {
            CycloNumber base = eval_at(e->children[0], n);
            if (base.is_zero()) {
                if (e->ipow < 0) throw UndefinedValueError("zero base with negative power in " + print(e), n);
                return CycloNumber(e->ipow == 0 ? 1 : 0);
            }
            return base.pow(e->ipow);
        }
        case ExprKind::GeometricPow: {
            Rational expo = e->affine.at(n);
            if (!is_integer(expo))
                throw UndefinedValueError("non-integer exponent " + rat_str(expo) + " in " + print(e), n);
            return e->geo_base.pow(to_long(to_integer(expo)));
        }
        case ExprKind::Factorial: {
            Rational v = e->affine.at(n);
            Integer iv = to_integer(v);
            if (iv < 0)
                throw UndefinedValueError("factorial of negative value " + iv.get_str() + " in " + print(e), n);
            return CycloNumber(Rational(factorial(to_long(iv))));
        }
        case ExprKind::Binomial: {
            Integer x = to_integer(e->affine.at(n));
            Integer y = to_integer(e->affine2.at(n));
            if (x < 0)
                throw UndefinedValueError("binomial with negative top argument " + x.get_str(), n);
            return CycloNumber(Rational(binomial_int(x, y)));
        }
        case ExprKind::Trig: {
            Rational angle;
            if (e->trig_inner) {
                CycloNumber w = eval_at(e->trig_inner, n);
                auto q = w.as_rational();
                if (!q)
                    throw NonCyclotomicError("nested trig argument is irrational at n = " +
                                             std::to_string(n) + ": " + w.str());
                angle = *q;
            } else {
                angle = e->affine.at(n);
            }
            try {
                return trig_value(e->trig, angle);
            } catch (const DomainError&) {
                throw UndefinedValueError("pole of " + print(e), n);
            }
        }
        case ExprKind::Indicator:
            return CycloNumber(Rational(indicator_eval(e->chi, n)));
    }
    throw Error("unreachable expression kind");
}

bool needs_normal_form_path(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Indicator:
            return true;
        case ExprKind::GeometricPow:
            return !e->affine.is_integral();
        default:
            for (const auto& ch : e->children)
                if (needs_normal_form_path(ch)) return true;
            if (e->trig_inner) return needs_normal_form_path(e->trig_inner);
            return false;
    }
}

std::optional<long> period_bound(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Const:
            return 1;
        case ExprKind::Indicator:
            return e->chi.m == 0 ? 1 : e->chi.m;
        case ExprKind::Var:
        case ExprKind::Factorial:
        case ExprKind::Binomial:
            return std::nullopt;
        case ExprKind::Add:
        case ExprKind::Mul:
        case ExprKind::Div: {
            long p = 1;
            for (const auto& ch : e->children) {
                auto q = period_bound(ch);
                if (!q) return std::nullopt;
                p = lcm_long(p, *q);
            }
            return p;
        }
        case ExprKind::PowInt:
            return period_bound(e->children[0]);
        case ExprKind::GeometricPow: {
            if (!is_integer(e->affine.slope)) return std::nullopt;
            // periodic iff the base is a root of unity
            long ord = e->geo_base.order();
            CycloNumber acc(1);
            for (long k = 1; k <= 2 * ord; ++k) {
                acc *= e->geo_base;
                if (acc.is_one()) {
                    long s = std::abs(to_long(to_integer(e->affine.slope)));
                    if (s == 0) return 1;
                    // base^(slope n): period k / gcd(k, slope)
                    long g = to_long(int_gcd(Integer(k), Integer(s)));
                    return k / g;
                }
            }
            return std::nullopt;
        }
        case ExprKind::Trig: {
            if (e->trig_inner) return period_bound(e->trig_inner);
            if (e->affine.slope == 0) return 1;
            return 2 * to_long(e->affine.slope.get_den());
        }
    }
    return std::nullopt;
}

std::optional<long> minimal_period(const ExprPtr& e) {
    auto bound = period_bound(e);
    if (!bound) return std::nullopt;
    long p = *bound;
    std::vector<CycloNumber> vals;
    vals.reserve(static_cast<std::size_t>(p));
    for (long j = 0; j < p; ++j) vals.push_back(eval_at(e, j));
    for (long t = 1; t <= p; ++t) {
        if (p % t != 0) continue;
        bool ok = true;
        for (long j = 0; ok && j < p; ++j)
            if (!(vals[static_cast<std::size_t>(j)] == vals[static_cast<std::size_t>(j % t)])) ok = false;
        if (ok) return t;
    }
    return p;
}

}  // namespace htseq
