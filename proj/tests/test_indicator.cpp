#include "doctest.h"
#include "htseq/indicator.hpp"

using namespace htseq;

TEST_CASE("indicator evaluation conventions") {
    CHECK(indicator_eval({2, 1}, 7) == 1);
    CHECK(indicator_eval({2, 1}, 8) == 0);
    for (long n = 0; n < 10; ++n) {
        CHECK(indicator_eval({0, 0}, n) == 0);  // the zero sequence
        CHECK(indicator_eval({1, 0}, n) == 1);  // the one sequence
    }
    CHECK_THROWS_AS(make_indicator(3, 5), DomainError);
    CHECK_THROWS_AS(make_indicator(0, 1), DomainError);
}

TEST_CASE("indicator products match the paper's examples") {
    CHECK(indicator_product({4, 1}, {6, 1}) == IndicatorTerm{12, 1});
    CHECK(indicator_product({4, 3}, {5, 2}) == IndicatorTerm{20, 7});
    CHECK(indicator_product({4, 1}, {6, 2}) == IndicatorTerm{0, 0});
    // suspected paper typo: chi(1 mod 2) * chi(1 mod 3) is the nonzero chi(1 mod 6)
    CHECK(indicator_product({2, 1}, {3, 1}) == IndicatorTerm{6, 1});
}

TEST_CASE("indicator product brute-force oracle, moduli <= 12") {
    for (long ma = 0; ma <= 12; ++ma) {
        for (long ja = 0; ja < std::max(1L, ma); ++ja) {
            if (ma == 0 && ja > 0) continue;
            for (long mb = 0; mb <= 12; ++mb) {
                for (long jb = 0; jb < std::max(1L, mb); ++jb) {
                    if (mb == 0 && jb > 0) continue;
                    IndicatorTerm a{ma, ja}, b{mb, jb};
                    IndicatorTerm p = indicator_product(a, b);
                    long span = 2 * lcm_long(std::max(1L, ma), std::max(1L, mb)) + 20;
                    for (long n = 0; n <= span; ++n)
                        REQUIRE(indicator_eval(p, n) == indicator_eval(a, n) * indicator_eval(b, n));
                }
            }
        }
    }
}

TEST_CASE("product is commutative and associative; units") {
    std::vector<IndicatorTerm> all;
    for (long m = 0; m <= 8; ++m)
        for (long j = 0; j < std::max(1L, m); ++j) {
            if (m == 0 && j > 0) continue;
            all.push_back({m, j});
        }
    for (const auto& a : all)
        for (const auto& b : all) {
            CHECK(indicator_product(a, b) == indicator_product(b, a));
            CHECK(indicator_product(a, IndicatorTerm{1, 0}) == a);
            CHECK(indicator_product(a, IndicatorTerm{0, 0}) == IndicatorTerm{0, 0});
            for (const auto& c : all)
                CHECK(indicator_product(indicator_product(a, b), c) ==
                      indicator_product(a, indicator_product(b, c)));
        }
}

TEST_CASE("uniqueness: pointwise equality on a window forces identity") {
    std::vector<IndicatorTerm> all;
    for (long m = 1; m <= 12; ++m)
        for (long j = 0; j < m; ++j) all.push_back({m, j});
    for (const auto& a : all)
        for (const auto& b : all) {
            long span = 2 * lcm_long(a.m, b.m);
            bool equal = true;
            for (long n = 0; n <= span && equal; ++n)
                equal = indicator_eval(a, n) == indicator_eval(b, n);
            CHECK(equal == (a == b));
        }
}

namespace {
// power-series coefficients of a rational function with den(0) != 0
std::vector<Rational> series_of(const QRat& f, long count) {
    std::vector<Rational> s(static_cast<std::size_t>(count), Rational(0));
    Rational d0 = f.den()[0];
    REQUIRE(d0 != 0);
    for (long t = 0; t < count; ++t) {
        Rational acc = f.num()[static_cast<std::size_t>(t)];
        for (long u = 0; u < t; ++u)
            acc -= s[static_cast<std::size_t>(u)] * f.den()[static_cast<std::size_t>(t - u)];
        s[static_cast<std::size_t>(t)] = acc / d0;
    }
    return s;
}
}  // namespace

TEST_CASE("generating functions") {
    CHECK_THROWS_AS(indicator_gf({0, 0}), DomainError);
    // z^j/(1 - z^m), checked structurally and by series expansion
    CHECK(indicator_gf({3, 2}) == QRat(QPoly::monomial(Rational(1), 2),
                                       QPoly(std::vector<Rational>{1, 0, 0, -1})));
    CHECK(indicator_gf({2, 1}) == QRat(QPoly::monomial(Rational(1), 1),
                                       QPoly(std::vector<Rational>{1, 0, -1})));
    for (long m = 1; m <= 6; ++m) {
        for (long j = 0; j < m; ++j) {
            auto series = series_of(indicator_gf({m, j}), 3 * m);
            for (long t = 0; t < 3 * m; ++t)
                CHECK(series[static_cast<std::size_t>(t)] == Rational(indicator_eval({m, j}, t)));
        }
    }
}
