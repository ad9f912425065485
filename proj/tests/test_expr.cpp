#include <random>

#include "doctest.h"
#include "htseq/expr.hpp"
#include "htseq/monomials.hpp"

using namespace htseq;

TEST_CASE("parsing shapes") {
    ExprPtr e = parse("sin(n*Pi/4)^2");
    REQUIRE(e->kind == ExprKind::PowInt);
    CHECK(e->ipow == 2);
    REQUIRE(e->children[0]->kind == ExprKind::Trig);
    CHECK(e->children[0]->trig == TrigKind::Sin);
    CHECK(e->children[0]->affine.slope == Rational(1, 4));

    ExprPtr f = parse("n! + 1/n!");
    REQUIRE(f->kind == ExprKind::Add);
    CHECK(f->children[0]->kind == ExprKind::Factorial);

    ExprPtr g = parse("sin(cos(n*Pi/3)*Pi)");
    REQUIRE(g->kind == ExprKind::Trig);
    REQUIRE(g->trig_inner != nullptr);
    CHECK(g->trig_inner->kind == ExprKind::Trig);
    CHECK(g->trig_inner->trig == TrigKind::Cos);

    CHECK(parse("(-1)^n")->kind == ExprKind::GeometricPow);
    CHECK(parse("3^(-n/2)")->affine.slope == Rational(-1, 2));
    CHECK(parse("chi(2, 0)")->kind == ExprKind::Indicator);
    CHECK(parse("1/2")->kind == ExprKind::Const);
    CHECK(parse("binomial(2*n, n)")->kind == ExprKind::Binomial);
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse("sin(n)"), ParseError);        // not a multiple of Pi
    CHECK_THROWS_AS(parse("2 + "), ParseError);
    CHECK_THROWS_AS(parse("foo(n)"), ParseError);
    CHECK_THROWS_AS(parse("n^n"), ParseError);           // non-constant base with n exponent is fine... n base
    CHECK_THROWS_AS(parse("Pi*n"), ParseError);          // Pi outside trig
    CHECK_THROWS_AS(parse("chi(3, 7)"), ParseError);
    try {
        parse("sin(n*Pi/4) + foo");
    } catch (const ParseError& e) {
        CHECK(e.offset >= 14);
    }
}

TEST_CASE("evaluation of the paper's running examples") {
    // sin(n pi/4)^2 at n = 2 -> 1
    CHECK(eval_at(parse("sin(n*Pi/4)^2"), 2) == CycloNumber(1));
    // sin(cos(n pi/3) pi) at n = 0 -> sin(pi) = 0
    CHECK(eval_at(parse("sin(cos(n*Pi/3)*Pi)"), 0).is_zero());
    // n! + 1/n! at 3 -> 37/6
    CHECK(eval_at(parse("n! + 1/n!"), 3) == CycloNumber(Rational(37, 6)));
    // values of sin(cos(n pi/3) pi): 0, 1, -1, 0, -1, 1 repeating
    ExprPtr g = parse("sin(cos(n*Pi/3)*Pi)");
    std::vector<long> expected{0, 1, -1, 0, -1, 1};
    for (long n = 0; n < 12; ++n)
        CHECK(eval_at(g, n) == CycloNumber(expected[static_cast<std::size_t>(n % 6)]));
}

TEST_CASE("undefined values name the index") {
    ExprPtr t = parse("tan(n*Pi/4)");
    CHECK(eval_at(t, 1) == CycloNumber(1));
    try {
        eval_at(t, 2);
        FAIL("expected a pole");
    } catch (const UndefinedValueError& e) {
        CHECK(e.index == 2);
    }
    CHECK_THROWS_AS(eval_at(parse("1/(n-3)"), 3), UndefinedValueError);
    CHECK_THROWS_AS(eval_at(parse("3^(-n/2)"), 1), UndefinedValueError);
    CHECK(eval_at(parse("3^(-n/2)"), 2) == CycloNumber(Rational(1, 3)));
}

TEST_CASE("parser round trip on random expressions") {
    std::mt19937 rng(4242);
    std::vector<std::string> atoms{"n",   "2",       "1/2",        "n!",          "(2*n+1)!",
                                   "sin(n*Pi/4)",    "cos(n*Pi/6)", "(-1)^n",     "2^n",
                                   "chi(3, 1)",      "binomial(2*n, n)", "tan(n*Pi/3)"};
    auto random_expr = [&](auto&& self, int depth) -> std::string {
        if (depth == 0) return atoms[rng() % atoms.size()];
        switch (rng() % 4) {
            case 0: return self(self, depth - 1) + " + " + self(self, depth - 1);
            case 1: return self(self, depth - 1) + "*" + self(self, depth - 1);
            case 2: return "(" + self(self, depth - 1) + ")^2";
            default: return "(" + self(self, depth - 1) + ")";
        }
    };
    for (int t = 0; t < 100; ++t) {
        std::string s = random_expr(random_expr, 1 + rng() % 2);
        ExprPtr e1 = parse(s);
        ExprPtr e2 = parse(print(e1));
        CHECK(expr_equal(e1, e2));
    }
}

TEST_CASE("periodicity detection") {
    CHECK(minimal_period(parse("sin(n*Pi/4)")).value() == 8);
    CHECK(minimal_period(parse("cos(n*Pi)")).value() == 2);
    CHECK(minimal_period(parse("sin(cos(n*Pi/3)*Pi)")).value() == 6);
    CHECK(minimal_period(parse("tan(n*Pi/3)")).value() == 3);
    CHECK(minimal_period(parse("sin(n*Pi/4)^2*cos(n*Pi/6)")).has_value());
    CHECK(!minimal_period(parse("n!")).has_value());
    CHECK(!minimal_period(parse("n + sin(n*Pi/2)")).has_value());
    // the detected period divides 2*lcm of the q's, by evaluation over two periods
    ExprPtr e = parse("sin(n*Pi/6)*cos(n*Pi/4)");
    long p = minimal_period(e).value();
    CHECK((2 * 12 * 8) % p == 0);
    for (long n = 0; n < 2 * p; ++n) CHECK(eval_at(e, n) == eval_at(e, n + p));
}

TEST_CASE("euler rewriting preserves values") {
    for (long q = 1; q <= 12; ++q) {
        ExprPtr e = parse("sin(n*Pi/" + std::to_string(q) + ")");
        ExprPtr c = parse("cos(n*Pi/" + std::to_string(q) + ")");
        MonomialSum ms = to_monomials(e);
        MonomialSum mc = to_monomials(c);
        for (long n = 0; n <= 40; ++n) {
            CHECK(eval_monomials(ms, n) == eval_at(e, n));
            CHECK(eval_monomials(mc, n) == eval_at(c, n));
        }
    }
}

TEST_CASE("monomial round trip on the paper expressions") {
    std::vector<std::string> exprs{"sin(n*Pi/4)^2",
                                   "n! + 1/n!",
                                   "sin(cos(n*Pi/3)*Pi)",
                                   "tan(n*Pi/3)",
                                   "sin(Pi*cos(n*Pi)/6)*sin(n*Pi/4)",
                                   "sin(Pi*cos(n*Pi)/6)*cos(n*Pi/4)",
                                   "sin(n*Pi/6)*cos(n*Pi/3)-sin(n*Pi/2)",
                                   "sin(n*Pi/4)^2*cos(n*Pi/6)^2"};
    for (const auto& s : exprs) {
        ExprPtr e = parse(s);
        MonomialSum ms = to_monomials(e);
        for (long n = 0; n <= 40; ++n) CHECK(eval_monomials(ms, n) == eval_at(e, n));
    }
}

TEST_CASE("monomials of the structural examples") {
    // n! + 1/n!: two classes with ratios (n+1) and 1/(n+1)
    MonomialSum ms = to_monomials(parse("n! + 1/n!"));
    REQUIRE(ms.terms.size() == 2);
    std::vector<std::string> ratios;
    for (const auto& t : ms.terms) ratios.push_back(t.class_ratio().str());
    CHECK(((ratios[0] == "n + 1" && ratios[1] == "1/(n + 1)") ||
           (ratios[1] == "n + 1" && ratios[0] == "1/(n + 1)")));

    // cos(n*Pi) = (-1)^n: a single rational geometric monomial
    MonomialSum mc = to_monomials(parse("cos(n*Pi)"));
    REQUIRE(mc.terms.size() == 1);
    CHECK(mc.terms[0].geo == CycloNumber(Rational(-1)));
    CHECK(mc.field_order() == 1);

    // sin(n*Pi/2): two geometric monomials over Q(zeta_4)
    MonomialSum msin = to_monomials(parse("sin(n*Pi/2)"));
    REQUIRE(msin.terms.size() == 2);
    CHECK(msin.field_order() == 4);

    // tan(n*Pi/4) rejected with the pole index n = 2
    try {
        to_monomials(parse("tan(n*Pi/4)"));
        FAIL("expected a pole");
    } catch (const UndefinedValueError& e) {
        CHECK(e.index == 2);
    }

    // indicators take the other path
    CHECK_THROWS_AS(to_monomials(parse("chi(2, 0)/n!")), UnsupportedStructureError);
}
