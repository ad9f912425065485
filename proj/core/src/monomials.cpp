#include "htseq/monomials.hpp"

#include <algorithm>

namespace htseq {

namespace {

CPoly cpoly_var() { return CPoly::var(); }

// (a*n + b+1)(a*n + b+2)...(a*n + b+k) as a polynomial over the cyclo field
CPoly rising_product(long a, long b, long k) {
    CPoly acc{CycloNumber(1)};
    for (long t = 1; t <= k; ++t) {
        CPoly lin(std::vector<CycloNumber>{CycloNumber(Rational(b + t)), CycloNumber(Rational(a))});
        acc = acc * lin;
    }
    return acc;
}

Monomial const_monomial(const CycloNumber& c) {
    Monomial m;
    m.coeff = CRat(CPoly(c));
    return m;
}

MonomialSum msum_from(std::vector<Monomial> terms) {
    MonomialSum s;
    // merge same classes
    for (auto& t : terms) {
        if (t.coeff.is_zero()) continue;
        t.geo = t.geo.reduced();
        bool merged = false;
        for (auto& u : s.terms) {
            if (u.same_class(t)) {
                u.coeff = u.coeff + t.coeff;
                merged = true;
                break;
            }
        }
        if (!merged) s.terms.push_back(std::move(t));
    }
    std::erase_if(s.terms, [](const Monomial& m) { return m.coeff.is_zero(); });
    return s;
}

MonomialSum msum_add(const MonomialSum& a, const MonomialSum& b) {
    std::vector<Monomial> all = a.terms;
    all.insert(all.end(), b.terms.begin(), b.terms.end());
    return msum_from(std::move(all));
}

Monomial mono_mul(const Monomial& x, const Monomial& y) {
    Monomial m;
    m.coeff = x.coeff * y.coeff;
    m.geo = x.geo * y.geo;
    m.facts = x.facts;
    for (const auto& [a, e] : y.facts) {
        m.facts[a] += e;
        if (m.facts[a] == 0) m.facts.erase(a);
    }
    return m;
}

MonomialSum msum_mul(const MonomialSum& a, const MonomialSum& b) {
    std::vector<Monomial> all;
    for (const auto& x : a.terms)
        for (const auto& y : b.terms) all.push_back(mono_mul(x, y));
    return msum_from(std::move(all));
}

MonomialSum msum_pow(const MonomialSum& a, long e) {
    MonomialSum acc;
    acc.terms = {const_monomial(CycloNumber(1))};
    for (long i = 0; i < e; ++i) acc = msum_mul(acc, a);
    return acc;
}

Monomial mono_inverse(const Monomial& x) {
    Monomial m;
    m.coeff = CRat(CPoly(CycloNumber(1))) / x.coeff;
    m.geo = x.geo.inverse();
    for (const auto& [a, e] : x.facts) m.facts[a] = -e;
    return m;
}

// root-of-unity filter of an exactly periodic node
MonomialSum dft_monomials(const ExprPtr& e) {
    auto period = minimal_period(e);
    if (!period)
        throw UnsupportedStructureError("expression is not periodic: " + print(e));
    long p = *period;
    std::vector<CycloNumber> vals;
    vals.reserve(static_cast<std::size_t>(p));
    for (long j = 0; j < p; ++j) vals.push_back(eval_at(e, j));
    std::vector<Monomial> terms;
    for (long k = 0; k < p; ++k) {
        CycloNumber ck(0);
        for (long j = 0; j < p; ++j) ck += vals[static_cast<std::size_t>(j)] * CycloNumber::zeta_pow(p, -k * j);
        ck = ck * Rational(1, p);
        if (ck.is_zero()) continue;
        Monomial m;
        m.coeff = CRat(CPoly(ck.reduced()));
        m.geo = CycloNumber::zeta_pow(p, k);
        terms.push_back(std::move(m));
    }
    return msum_from(std::move(terms));
}

MonomialSum reciprocal(const ExprPtr& den_expr, const MonomialSum& den) {
    if (den.is_zero())
        throw UnsupportedStructureError("division by the zero expression: " + print(den_expr));
    if (den.terms.size() == 1) {
        MonomialSum s;
        s.terms = {mono_inverse(den.terms[0])};
        return s;
    }
    if (period_bound(den_expr)) {
        // periodic denominator: invert pointwise, then filter
        ExprPtr inv = make_div(make_const(CycloNumber(1)), den_expr);
        return dft_monomials(inv);
    }
    throw UnsupportedStructureError("cannot invert a sum of distinct monomials: " + print(den_expr));
}

MonomialSum factorial_monomials(const Affine& arg) {
    long a = to_long(to_integer(arg.slope));
    long b = to_long(to_integer(arg.intercept));
    if (a < 0)
        throw UnsupportedStructureError("factorial with negative slope is eventually undefined: (" +
                                        arg.str() + ")!");
    if (a == 0) {
        if (b < 0) throw UnsupportedStructureError("factorial of a negative constant");
        MonomialSum s;
        s.terms = {const_monomial(CycloNumber(Rational(factorial(b))))};
        return s;
    }
    Monomial m;
    m.facts[a] = 1;
    if (b >= 0) {
        m.coeff = CRat(rising_product(a, 0, b));  // (an+b)! = (an)! * (an+1)...(an+b)
    } else {
        m.coeff = CRat(CPoly(CycloNumber(1)), rising_product(a, b, -b));  // (an)! = (an+b)!*(an+b+1)...(an)
    }
    MonomialSum s;
    s.terms = {std::move(m)};
    return s;
}

MonomialSum trig_euler(TrigKind kind, const Affine& arg) {
    // argument = (s n + t) pi; e^{i pi s} and e^{i pi t} are roots of unity
    Rational s = arg.slope, t = arg.intercept;
    long qs = to_long(s.get_den()), ps = to_long(s.get_num() % Integer(2 * qs));
    long qt = to_long(t.get_den()), pt = to_long(t.get_num() % Integer(2 * qt));
    CycloNumber gamma = CycloNumber::zeta_pow(2 * qs, ps);
    CycloNumber c = CycloNumber::zeta_pow(2 * qt, pt);
    Monomial plus, minus;
    plus.geo = gamma;
    minus.geo = gamma.inverse();
    if (kind == TrigKind::Cos) {
        plus.coeff = CRat(CPoly(c * Rational(1, 2)));
        minus.coeff = CRat(CPoly(c.inverse() * Rational(1, 2)));
    } else {
        CycloNumber inv2i = (Rational(2) * CycloNumber::i()).inverse();
        plus.coeff = CRat(CPoly(c * inv2i));
        minus.coeff = CRat(CPoly(-(c.inverse() * inv2i)));
    }
    return msum_from({plus, minus});
}

MonomialSum convert(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Const: {
            MonomialSum s;
            if (!e->value.is_zero()) s.terms = {const_monomial(e->value)};
            return s;
        }
        case ExprKind::Var: {
            Monomial m;
            m.coeff = CRat(cpoly_var());
            MonomialSum s;
            s.terms = {std::move(m)};
            return s;
        }
        case ExprKind::Add: {
            MonomialSum acc;
            for (const auto& ch : e->children) acc = msum_add(acc, convert(ch));
            return acc;
        }
        case ExprKind::Mul: {
            MonomialSum acc;
            acc.terms = {const_monomial(CycloNumber(1))};
            for (const auto& ch : e->children) acc = msum_mul(acc, convert(ch));
            return acc;
        }
        case ExprKind::Div: {
            MonomialSum num = convert(e->children[0]);
            MonomialSum den = convert(e->children[1]);
            return msum_mul(num, reciprocal(e->children[1], den));
        }
        case ExprKind::PowInt: {
            if (e->ipow >= 0) return msum_pow(convert(e->children[0]), e->ipow);
            MonomialSum base = convert(e->children[0]);
            MonomialSum powed = msum_pow(base, -e->ipow);
            return reciprocal(make_pow_int(e->children[0], -e->ipow), powed);
        }
        case ExprKind::GeometricPow: {
            if (!e->affine.is_integral())
                throw UnsupportedStructureError(
                    "fractional geometric exponent takes the normal-form path: " + print(e));
            long s = to_long(to_integer(e->affine.slope));
            long t = to_long(to_integer(e->affine.intercept));
            Monomial m;
            m.coeff = CRat(CPoly(e->geo_base.pow(t)));
            m.geo = e->geo_base.pow(s);
            MonomialSum out;
            out.terms = {std::move(m)};
            return out;
        }
        case ExprKind::Factorial:
            return factorial_monomials(e->affine);
        case ExprKind::Binomial: {
            // binomial(x, y) = x! / (y! (x-y)!)
            const Affine& x = e->affine;
            const Affine& y = e->affine2;
            Affine diff{x.slope - y.slope, x.intercept - y.intercept};
            auto nonneg = [](const Affine& a) {
                return a.slope > 0 || (a.slope == 0 && a.intercept >= 0);
            };
            if (!nonneg(y) || !nonneg(diff) || !nonneg(x))
                throw UnsupportedStructureError("binomial is eventually zero or undefined: " + print(e));
            MonomialSum num = factorial_monomials(x);
            MonomialSum d1 = factorial_monomials(y);
            MonomialSum d2 = factorial_monomials(diff);
            MonomialSum den = msum_mul(d1, d2);
            // factorial sums are single monomials; invert directly
            MonomialSum inv;
            inv.terms = {mono_inverse(den.terms[0])};
            return msum_mul(num, inv);
        }
        case ExprKind::Trig: {
            if (!e->trig_inner && e->trig != TrigKind::Tan) return trig_euler(e->trig, e->affine);
            if (!e->trig_inner && e->trig == TrigKind::Tan) {
                // reject tan with poles on N up front, naming the first pole
                Rational s = e->affine.slope;
                long q = to_long(s.get_den());
                for (long n = 0; n < 2 * q; ++n) {
                    Rational angle = e->affine.at(n);
                    if (trig_value(TrigKind::Cos, angle).is_zero())
                        throw UndefinedValueError("pole of " + print(e), n);
                }
                return dft_monomials(e);
            }
            return dft_monomials(e);  // nested trig: exact pointwise filter
        }
        case ExprKind::Indicator:
            throw UnsupportedStructureError("indicator terms take the normal-form path: " + print(e));
    }
    throw Error("unreachable expression kind");
}

}  // namespace

CRat Monomial::class_ratio() const {
    CPoly num{CycloNumber(1)};
    CPoly den{CycloNumber(1)};
    for (const auto& [a, e] : facts) {
        CPoly block = rising_product(a, 0, a);  // (an+1)...(an+a)
        for (long i = 0; i < std::abs(e); ++i) {
            if (e > 0)
                num = num * block;
            else
                den = den * block;
        }
    }
    return CRat(num * CPoly(geo), den);
}

long MonomialSum::field_order() const {
    long ord = 1;
    for (const auto& t : terms) {
        ord = lcm_long(ord, t.geo.reduced().order());
        for (const auto& c : t.coeff.num().coeffs()) ord = lcm_long(ord, c.reduced().order());
        for (const auto& c : t.coeff.den().coeffs()) ord = lcm_long(ord, c.reduced().order());
    }
    return ord;
}

MonomialSum to_monomials(const ExprPtr& e) { return convert(e); }

CycloNumber eval_monomials(const MonomialSum& s, long n) {
    CycloNumber acc(0);
    for (const auto& t : s.terms) {
        auto c = t.coeff.eval(CycloNumber(Rational(n)));
        if (!c)
            throw UndefinedValueError("monomial coefficient has a pole", n);
        CycloNumber v = *c * t.geo.pow(n);
        for (const auto& [a, e] : t.facts) {
            CycloNumber f(Rational(factorial(a * n)));
            v = e > 0 ? v * f.pow(e) : v * f.pow(e);
        }
        acc += v;
    }
    return acc;
}

}  // namespace htseq
