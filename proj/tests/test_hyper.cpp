#include <random>

#include "doctest.h"
#include "htseq/holonomic.hpp"
#include "htseq/factor.hpp"
#include "htseq/mfold.hpp"

using namespace htseq;

namespace {

bool has_ratio(const std::vector<HyperRatio>& rs, const QRat& r) {
    for (const auto& hr : rs)
        if (hr.ratio == r) return true;
    return false;
}

bool basis_has(const SolutionBasis& b, long m, const QRat& r) {
    for (const auto& e : b.entries) {
        if (e.m != m) continue;
        for (const auto& q : e.ratios)
            if (q == r) return true;
    }
    return false;
}

// telescoped check: ratio r solves rec at all n in [n*, n* + d + 20]
void check_ratio_solves(const Recurrence& rec, const QRat& r) {
    long d = rec.order();
    long start = safe_anchor(r);
    for (const Integer& root : integer_roots(rec.leading()))
        if (root >= 0) start = std::max(start, to_long(root) + 1);
    for (const Integer& root : integer_roots(rec.trailing()))
        if (root >= 0) start = std::max(start, to_long(root) + 1);
    std::vector<Rational> h(static_cast<std::size_t>(start + d + 22), Rational(0));
    h[static_cast<std::size_t>(start)] = 1;
    for (std::size_t k = static_cast<std::size_t>(start); k + 1 < h.size(); ++k)
        h[k + 1] = h[k] * *r.eval(Rational(static_cast<long>(k)));
    for (long n = start; n <= start + 20; ++n) {
        Rational acc(0);
        for (long i = 0; i <= d; ++i)
            acc += rec.coeffs[static_cast<std::size_t>(i)].eval(Rational(n)) *
                   h[static_cast<std::size_t>(n + i)];
        REQUIRE(acc == 0);
    }
}

}  // namespace

TEST_CASE("hyper on two-term recurrences") {
    // a(n+1) - 2a(n) = 0 -> ratio 2
    Recurrence r = make_recurrence({QPoly(Rational(-2)), QPoly(Rational(1))}, 1);
    auto sols = hyper(r);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].ratio == QRat(Rational(2)));
}

TEST_CASE("hyper on the paper's factorial recurrence") {
    // Eq. (recn1n): ratios n+1 and 1/(n+1)
    Recurrence rec = *find_recurrence(parse("n! + 1/n!"), 10, 1);
    auto sols = hyper(rec);
    CHECK(has_ratio(sols, QRat(poly_from_longs({1, 1}))));
    CHECK(has_ratio(sols, QRat(QPoly(Rational(1)), poly_from_longs({1, 1}))));
    for (const auto& s : sols) check_ratio_solves(rec, s.ratio);
}

TEST_CASE("hyper on the order-3 trig recurrence") {
    // -a(n) + a(n+1) - a(n+2) + a(n+3) = 0: over Q only the constant survives
    Recurrence rec = *find_recurrence(parse("sin(n*Pi/4)^2"), 10, 1);
    auto sols = hyper(rec);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].ratio == QRat(Rational(1)));
}

TEST_CASE("hyper completeness round trip at desk scale") {
    std::mt19937 rng(2024);
    auto random_poly = [&](int maxdeg) {
        int deg = rng() % (maxdeg + 1);
        std::vector<Rational> cs(static_cast<std::size_t>(deg) + 1);
        for (auto& c : cs) c = Rational(static_cast<long>(rng() % 5) - 2);
        cs.back() = Rational(1 + static_cast<long>(rng() % 2));
        return QPoly(cs);
    };
    int done = 0;
    int attempts = 0;
    while (done < 100 && attempts < 1000) {
        ++attempts;
        // up to 3 hypergeometric terms with rational ratios of degree <= 2
        int count = 1 + static_cast<int>(rng() % 3);
        std::vector<QRat> ratios;
        std::optional<Recurrence> rec;
        bool ok = true;
        for (int i = 0; i < count && ok; ++i) {
            QPoly num = random_poly(2), den = random_poly(2);
            if (num.is_zero() || den.is_zero()) {
                ok = false;
                break;
            }
            QRat ratio(num, den);
            if (ratio.is_zero()) {
                ok = false;
                break;
            }
            bool dup = false;
            for (const auto& r : ratios) dup = dup || r == ratio;
            if (dup) {
                ok = false;
                break;
            }
            ratios.push_back(ratio);
            Recurrence piece = make_recurrence({-ratio.num(), ratio.den()}, 1);
            rec = rec ? sum_closure(*rec, piece) : piece;
        }
        if (!ok) continue;
        ++done;
        auto sols = hyper(*rec);
        for (const auto& want : ratios) {
            bool found = has_ratio(sols, want);
            if (!found) {
                CAPTURE(want.str());
                CAPTURE(rec->str());
            }
            REQUIRE(found);
        }
    }
    CHECK(done == 100);
}

TEST_CASE("term_value telescoping") {
    // ratio -1, m=2, j=0, anchor (0,1): at n=6 -> (-1)^3 = -1
    HyperTerm h1{2, 0, QRat(Rational(-1)), 0, CycloNumber(1), std::nullopt};
    CHECK(term_value(h1, 6) == CycloNumber(Rational(-1)));
    CHECK(term_value(h1, 3).is_zero());  // off the residue class
    // ratio k+1, m=1, j=0, anchor (0,1): n=4 -> 4! = 24
    HyperTerm h2{1, 0, QRat(poly_from_longs({1, 1})), 0, CycloNumber(1), std::nullopt};
    CHECK(term_value(h2, 4) == CycloNumber(Rational(24)));
    // ratio -1, m=4, j=1, anchor (0, -sqrt(2)/4): two ratio steps to n=9,
    // so (-1)^2 preserves the anchor value -sqrt(2)/4 (which is also the
    // exact value of sin(Pi*cos(9*Pi)/6)*sin(9*Pi/4))
    CycloNumber root2 = CycloNumber::zeta(8) - CycloNumber::zeta_pow(8, 3);
    HyperTerm h3{4, 1, QRat(Rational(-1)), 0, root2 * Rational(-1, 4), std::nullopt};
    CHECK(term_value(h3, 9) == root2 * Rational(-1, 4));
    CHECK(term_value(h3, 9) == eval_at(parse("sin(Pi*cos(n*Pi)/6)*sin(n*Pi/4)"), 9));
    // polynomial section h(k) = k via ratio (k+1)/k anchored at (1, 1)
    HyperTerm h4{1, 0, QRat(poly_from_longs({1, 1}), poly_from_longs({0, 1})), 1, CycloNumber(1),
                 std::nullopt};
    CHECK(term_value(h4, 0).is_zero());
    CHECK(term_value(h4, 7) == CycloNumber(Rational(7)));
}

TEST_CASE("mfold_hyper on a(n) + a(n+4) = 0") {
    Recurrence rec = make_recurrence(
        {QPoly(Rational(1)), QPoly(), QPoly(), QPoly(), QPoly(Rational(1))}, 1);
    SolutionBasis basis = mfold_hyper(rec, 4);
    REQUIRE(basis.entries.size() == 1);
    CHECK(basis.entries[0].m == 4);
    REQUIRE(basis.entries[0].ratios.size() == 1);
    CHECK(basis.entries[0].ratios[0] == QRat(Rational(-1)));
    CHECK(basis.pieces.size() == 4);  // all four remainders
}

TEST_CASE("mfold_hyper on Example 10's order-3 recurrence") {
    Recurrence rec = *find_recurrence(parse("sin(n*Pi/4)^2"), 10, 1);
    SolutionBasis basis = mfold_hyper(rec, 3);
    // the paper's basis: {{1, {1}}, {2, {(-1)^k}}}
    CHECK(basis_has(basis, 1, QRat(Rational(1))));
    CHECK(basis_has(basis, 2, QRat(Rational(-1))));
    CHECK(basis.pieces.size() == 3);  // 1 + two remainders at fold 2
}

TEST_CASE("mfold_hyper subsumes larger folds of constants") {
    // a(n+1) - a(n) = 0: only the fold-1 constant survives
    Recurrence rec = make_recurrence({QPoly(Rational(-1)), QPoly(Rational(1))}, 1);
    SolutionBasis basis = mfold_hyper(rec, 3);
    REQUIRE(basis.entries.size() == 1);
    CHECK(basis.entries[0].m == 1);
    CHECK(basis.pieces.size() == 1);
}

TEST_CASE("mfold_hyper keeps genuine larger folds: a(n+3) + a(n) = 0") {
    // solutions include the masked pieces (-1)^k chi(n mod 3 = j); the fold-1
    // ratio -1 is spanned by them and must be dropped
    Recurrence rec = make_recurrence({QPoly(Rational(1)), QPoly(), QPoly(), QPoly(Rational(1))}, 1);
    SolutionBasis basis = mfold_hyper(rec, 3);
    REQUIRE(basis.entries.size() == 1);
    CHECK(basis.entries[0].m == 3);
    CHECK(basis.entries[0].ratios[0] == QRat(Rational(-1)));
    CHECK(basis.pieces.size() == 3);
}

TEST_CASE("mfold_hyper(rec, 1) agrees with hyper") {
    Recurrence rec = *find_recurrence(parse("n! + 1/n!"), 10, 1);
    SolutionBasis basis = mfold_hyper(rec, 1);
    auto sols = hyper(rec);
    REQUIRE(basis.entries.size() == 1);
    CHECK(basis.entries[0].m == 1);
    CHECK(basis.entries[0].ratios.size() == sols.size());
}

TEST_CASE("mfold_hyper determinism") {
    Recurrence rec = *find_recurrence(parse("sin(n*Pi/4)^2"), 10, 1);
    SolutionBasis b1 = mfold_hyper(rec, 3);
    SolutionBasis b2 = mfold_hyper(rec, 3);
    CHECK(b1.json() == b2.json());
    REQUIRE(b1.pieces.size() == b2.pieces.size());
    for (std::size_t i = 0; i < b1.pieces.size(); ++i) {
        CHECK(b1.pieces[i].m == b2.pieces[i].m);
        CHECK(b1.pieces[i].j == b2.pieces[i].j);
        CHECK(b1.pieces[i].ratio == b2.pieces[i].ratio);
    }
}
